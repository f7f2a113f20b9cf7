#include "profinite/regex.hpp"

#include <algorithm>
#include <cctype>

#include "profinite/error.hpp"

namespace profinite {

Alphabet makeAlphabet(std::string_view letters) {
  std::set<char> s(letters.begin(), letters.end());
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)))
      throw DomainError(std::string("invalid alphabet letter '") + c + "'");
  return Alphabet(s.begin(), s.end());
}

Regex Regex::empty() { return Regex(std::make_shared<Node>(Node{Kind::Empty})); }
Regex Regex::epsilon() { return Regex(std::make_shared<Node>(Node{Kind::Epsilon})); }

Regex Regex::letter(char c, bool inverse) {
  return Regex(std::make_shared<Node>(Node{Kind::Letter, c, inverse}));
}

Regex Regex::unite(Regex a, Regex b) {
  return Regex(std::make_shared<Node>(Node{Kind::Union, 0, false,
                                           std::make_shared<Regex>(std::move(a)),
                                           std::make_shared<Regex>(std::move(b))}));
}

Regex Regex::concat(Regex a, Regex b) {
  return Regex(std::make_shared<Node>(Node{Kind::Concat, 0, false,
                                           std::make_shared<Regex>(std::move(a)),
                                           std::make_shared<Regex>(std::move(b))}));
}

Regex Regex::star(Regex a) {
  return Regex(std::make_shared<Node>(
      Node{Kind::Star, 0, false, std::make_shared<Regex>(std::move(a)), nullptr}));
}

Regex Regex::plus(Regex a) {
  return Regex(std::make_shared<Node>(
      Node{Kind::Plus, 0, false, std::make_shared<Regex>(std::move(a)), nullptr}));
}

std::size_t Regex::size() const {
  switch (kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
    case Kind::Letter:
      return 1;
    case Kind::Union:
    case Kind::Concat:
      return 1 + left().size() + right().size();
    case Kind::Star:
    case Kind::Plus:
      return 1 + left().size();
  }
  return 0;
}

std::set<char> Regex::letters() const {
  std::set<char> out;
  switch (kind()) {
    case Kind::Letter:
      out.insert(letter());
      break;
    case Kind::Union:
    case Kind::Concat: {
      out = left().letters();
      auto r = right().letters();
      out.insert(r.begin(), r.end());
      break;
    }
    case Kind::Star:
    case Kind::Plus:
      out = left().letters();
      break;
    default:
      break;
  }
  return out;
}

bool Regex::hasInverseLetters() const {
  switch (kind()) {
    case Kind::Letter:
      return inverse();
    case Kind::Union:
    case Kind::Concat:
      return left().hasInverseLetters() || right().hasInverseLetters();
    case Kind::Star:
    case Kind::Plus:
      return left().hasInverseLetters();
    default:
      return false;
  }
}

namespace {

// Precedence: 0 union, 1 concatenation, 2 postfix operand.
std::string render(const Regex& r, int context) {
  using K = Regex::Kind;
  auto wrap = [&](std::string s, int own) { return own < context ? "(" + s + ")" : s; };
  switch (r.kind()) {
    case K::Empty:
      return "#";
    case K::Epsilon:
      return "~";
    case K::Letter:
      return r.inverse() ? std::string{r.letter(), '\''} : std::string{r.letter()};
    case K::Union:
      return wrap(render(r.left(), 0) + "|" + render(r.right(), 0), 0);
    case K::Concat:
      return wrap(render(r.left(), 1) + render(r.right(), 1), 1);
    case K::Star:
      return render(r.left(), 2) + "*";
    case K::Plus:
      return render(r.left(), 2) + "+";
  }
  return {};
}

}  // namespace

std::string Regex::toString() const { return render(*this, 0); }

bool operator==(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  using K = Regex::Kind;
  switch (a.kind()) {
    case K::Empty:
    case K::Epsilon:
      return true;
    case K::Letter:
      return a.letter() == b.letter() && a.inverse() == b.inverse();
    case K::Union:
    case K::Concat:
      return a.left() == b.left() && a.right() == b.right();
    case K::Star:
    case K::Plus:
      return a.left() == b.left();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Regex parse() {
    Regex r = parseUnion();
    skipSpace();
    if (pos_ < text_.size())
      throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool startsAtom() {
    skipSpace();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '~' || c == '#' || std::isalnum(static_cast<unsigned char>(c));
  }

  Regex parseUnion() {
    Regex r = parseConcat();
    skipSpace();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      r = Regex::unite(std::move(r), parseConcat());
      skipSpace();
    }
    return r;
  }

  Regex parseConcat() {
    Regex r = parsePostfix();
    while (startsAtom()) r = Regex::concat(std::move(r), parsePostfix());
    return r;
  }

  Regex parsePostfix() {
    Regex r = parseAtom();
    skipSpace();
    while (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '+')) {
      r = text_[pos_] == '*' ? Regex::star(std::move(r)) : Regex::plus(std::move(r));
      ++pos_;
      skipSpace();
    }
    return r;
  }

  Regex parseAtom() {
    skipSpace();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex inner = parseUnion();
      skipSpace();
      if (pos_ >= text_.size()) throw SyntaxError("missing ')'", pos_);
      if (text_[pos_] != ')')
        throw SyntaxError(std::string("expected ')' but found '") + text_[pos_] + "'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '~') {
      ++pos_;
      return Regex::epsilon();
    }
    if (c == '#') {
      ++pos_;
      return Regex::empty();
    }
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (alphabet_.find(c) == std::string::npos)
        throw SyntaxError(std::string("letter '") + c + "' is not in the alphabet", pos_);
      ++pos_;
      return Regex::letter(c);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Regex parseRegex(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse();
}

// ---------------------------------------------------------------------------

Regex simplifiedUnion(const Regex& a, const Regex& b) {
  if (a.kind() == Regex::Kind::Empty) return b;
  if (b.kind() == Regex::Kind::Empty) return a;
  if (a == b) return a;
  return Regex::unite(a, b);
}

Regex simplifiedConcat(const Regex& a, const Regex& b) {
  if (a.kind() == Regex::Kind::Empty || b.kind() == Regex::Kind::Empty) return Regex::empty();
  if (a.kind() == Regex::Kind::Epsilon) return b;
  if (b.kind() == Regex::Kind::Epsilon) return a;
  return Regex::concat(a, b);
}

Regex simplifiedStar(const Regex& a) {
  if (a.kind() == Regex::Kind::Empty || a.kind() == Regex::Kind::Epsilon)
    return Regex::epsilon();
  if (a.kind() == Regex::Kind::Star) return a;
  return Regex::star(a);
}

}  // namespace profinite
