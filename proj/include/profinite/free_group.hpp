#pragma once

// The free group FG(A): reduced words, Stallings subgroup graphs, and
// automata over the doubled alphabet A ∪ A⁻¹ representing rational subsets,
// with Benois saturation for membership and intersection.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/automata.hpp"
#include "profinite/regex.hpp"

namespace profinite {

// Ordered a < a' < b < b' < ...
struct SignedLetter {
  char letter;
  bool inverse = false;

  SignedLetter inverted() const { return {letter, !inverse}; }
  std::string toString() const;
  auto operator<=>(const SignedLetter&) const = default;
};

// A freely reduced word.
class GroupWord {
 public:
  GroupWord() = default;
  // Free reduction of an arbitrary sequence.
  static GroupWord reduce(std::span<const SignedLetter> raw);
  // Positive word from a string of letters.
  static GroupWord positive(std::string_view letters);
  // Text format: letters with an optional ' for the inverse; "~" is the
  // identity. Throws SyntaxError.
  static GroupWord parse(std::string_view text);

  const std::vector<SignedLetter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool isIdentity() const { return letters_.empty(); }
  GroupWord inverse() const;
  std::string toString() const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<SignedLetter> letters_;
};

// Automaton whose edges carry signed letters, plus epsilon edges.
struct GroupAutomaton {
  struct Edge {
    SignedLetter label;
    std::uint32_t to;
  };

  std::size_t states = 0;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::vector<std::uint32_t>> epsilon;
  std::set<std::uint32_t> initials;
  std::set<std::uint32_t> finals;
  bool saturated = false;
  // Stallings mode: edges closed under inversion, deterministic, core.
  bool inverseMode = false;

  std::uint32_t addState();
  void addEdge(std::uint32_t from, SignedLetter label, std::uint32_t to);
  void addEpsilon(std::uint32_t from, std::uint32_t to);
  std::size_t edgeCount() const;
  std::size_t epsilonCount() const;
  std::set<char> letters() const;
};

// --- Stallings graphs ------------------------------------------------------

// Folded core inverse automaton of the subgroup generated by `gens`; the
// single base state 0 is both initial and final.
GroupAutomaton stallingsGraph(const std::vector<GroupWord>& gens);

bool isStallingsGraph(const GroupAutomaton& g);

// True iff w reads a loop at the base. Throws ContractViolation when `g` is
// not a folded Stallings graph.
bool subgroupContains(const GroupAutomaton& g, const GroupWord& w);

// --- Rational subsets ------------------------------------------------------

GroupAutomaton emptySet();
GroupAutomaton identitySet();  // {1}
GroupAutomaton wordSet(const GroupWord& w);

// Adds epsilon edges p -> q whenever p -x-> r =eps=> r' -x^-1-> q, until
// nothing changes. The reduced words accepted by the result are exactly the
// reductions of the words accepted by the input.
GroupAutomaton benoisSaturate(const GroupAutomaton& m);

// True iff the reduced word w is the reduction of some accepted word.
bool rationalMembership(const GroupAutomaton& m, const GroupWord& w);

GroupAutomaton unite(const GroupAutomaton& a, const GroupAutomaton& b);
GroupAutomaton concat(const GroupAutomaton& a, const GroupAutomaton& b);
GroupAutomaton star(const GroupAutomaton& m);
GroupAutomaton invert(const GroupAutomaton& m);
// saturate(star(unite(m, invert(m)))): the subgroup generated by the subset.
GroupAutomaton generatedSubgroup(const GroupAutomaton& m);

// Subset intersection, as the product of the reduced-word automata.
GroupAutomaton intersect(const GroupAutomaton& a, const GroupAutomaton& b);

// Shortest reduced word in both subsets; ties broken by the letter order.
std::optional<GroupWord> rationalIntersectionNonempty(const GroupAutomaton& a,
                                                      const GroupAutomaton& b);

// Minimal complete DFA, over the doubled alphabet of `letters`, of the
// reduced words in the subset. Letter i of the table is signedAlphabet()[i].
struct ReducedDfa {
  std::vector<SignedLetter> alphabet;
  TransitionTable table;

  bool accepts(const GroupWord& w) const;
  friend bool operator==(const ReducedDfa&, const ReducedDfa&) = default;
};
std::vector<SignedLetter> signedAlphabet(const std::set<char>& letters);
ReducedDfa reducedDfa(const GroupAutomaton& m, const std::set<char>& letters);

// Trimmed automaton of the reduced language; accepting paths read only
// reduced words, so it is saturated. Used to keep composite automata small.
GroupAutomaton normalize(const GroupAutomaton& m);

// An expression (with inverse letters) for the reduced language.
Regex toRegex(const GroupAutomaton& m);

// Both subsets contain the same group elements.
bool sameSubset(const GroupAutomaton& a, const GroupAutomaton& b);

}  // namespace profinite
