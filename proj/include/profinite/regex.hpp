#pragma once

// Regular expressions over single-character letters.
//
// Grammar (whitespace ignored):
//   union   := concat ('|' concat)*
//   concat  := postfix postfix*
//   postfix := atom ('*' | '+')*
//   atom    := letter | '~' | '#' | '(' union ')'
// Letters are ASCII alphanumerics; '~' is the empty word, '#' the empty
// language.
//
// Letters may also carry an inverse flag. The parser never produces one; they
// appear when a rational subset of a free group is written back as an
// expression (printed as a', b', ...).

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace profinite {

// Sorted string of distinct letters.
using Alphabet = std::string;

Alphabet makeAlphabet(std::string_view letters);

class Regex {
 public:
  enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star, Plus };

  static Regex empty();
  static Regex epsilon();
  static Regex letter(char c, bool inverse = false);
  static Regex unite(Regex a, Regex b);
  static Regex concat(Regex a, Regex b);
  static Regex star(Regex a);
  static Regex plus(Regex a);

  Kind kind() const { return node_->kind; }
  char letter() const { return node_->letter; }
  bool inverse() const { return node_->inverse; }
  // Left operand, or the only operand of Star and Plus.
  const Regex& left() const { return *node_->left; }
  const Regex& right() const { return *node_->right; }

  std::size_t size() const;  // number of AST nodes
  std::set<char> letters() const;
  bool hasInverseLetters() const;
  std::string toString() const;

  friend bool operator==(const Regex& a, const Regex& b);

 private:
  struct Node {
    Kind kind;
    char letter = 0;
    bool inverse = false;
    std::shared_ptr<const Regex> left{}, right{};
  };
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Throws SyntaxError (with the byte offset into `text`) on malformed input or
// on a letter outside `alphabet`.
Regex parseRegex(std::string_view text, const Alphabet& alphabet);

// Union/concatenation/star constructors that fold the identities involving
// the empty language and the empty word. Used when building expressions
// programmatically so they stay small.
Regex simplifiedUnion(const Regex& a, const Regex& b);
Regex simplifiedConcat(const Regex& a, const Regex& b);
Regex simplifiedStar(const Regex& a);

}  // namespace profinite
