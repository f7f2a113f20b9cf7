#pragma once

// Substitutions and sofic shifts: primitivity, block languages, irreducibility
// and topological entropy.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "profinite/automata.hpp"
#include "profinite/regex.hpp"

namespace profinite {

class Substitution {
 public:
  // images[i] is the image of alphabet[i]; every image is nonempty and uses
  // only letters of the alphabet. Throws DomainError.
  Substitution(Alphabet alphabet, std::vector<std::string> images);

  // "a->ab; b->ba". Throws SyntaxError.
  static Substitution parse(std::string_view text);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& image(char letter) const;
  std::string apply(std::string_view word) const;
  std::string toString() const;

  // m[b][a] = occurrences of b in the image of a.
  std::vector<std::vector<std::size_t>> incidence() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> images_;
};

// Positivity of the incidence matrix raised to the Wielandt bound (|A|-1)^2+1.
bool isPrimitive(const Substitution& s);
// The definition: some n up to the Wielandt bound has every letter occurring
// in every image under s^n. Tracks letter sets, not words.
bool isPrimitiveByDefinition(const Substitution& s);

// Length-n factors of s^k(a) over all letters a, iterating k until two
// successive factor sets agree. Throws DomainError for non-primitive or
// non-growing substitutions.
std::set<std::string> substitutionBlocks(const Substitution& s, std::size_t n);

// Heuristic only: whether the block count stays constant for every length
// in [from, to]. Does not decide periodicity.
bool blockComplexityLooksBounded(const Substitution& s, std::size_t from, std::size_t to);

// A labelled graph whose bi-infinite paths present the shift, together with
// the minimal DFA of its block language.
struct SoficShift {
  Alphabet alphabet;
  std::size_t states = 0;
  std::vector<std::vector<std::pair<std::size_t, State>>> edges;  // (letter, target)
  Dfa blockDfa;

  bool isBlock(std::string_view w) const { return blockDfa.accepts(w); }
};

// Keeps the useful states of `dfa`, then repeatedly drops states with no
// incoming or no outgoing edge. Throws DomainError ("not a subshift") when
// nothing is left.
SoficShift factorialTrim(const Dfa& dfa);
SoficShift soficShift(const Regex& r, const Alphabet& alphabet);

// Some strongly connected component of the presentation already presents
// the whole block language.
bool isIrreducible(const SoficShift& x);
// Directly from the definition: for blocks u, v of length <= maxBlock there
// is w of length <= maxBridge with uwv a block.
bool isIrreducibleByDefinition(const SoficShift& x, std::size_t maxBlock = 4,
                               std::size_t maxBridge = 8);

// log2 of the spectral radius of the block automaton restricted to its
// non-sink states.
double entropy(const SoficShift& x);
// Number of blocks of length n.
double blockCount(const SoficShift& x, std::size_t n);

// The subshift of x avoiding the factor w.
SoficShift forbidFactor(const SoficShift& x, std::string_view w);

}  // namespace profinite
