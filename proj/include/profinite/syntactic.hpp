#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "profinite/automata.hpp"
#include "profinite/regex.hpp"
#include "profinite/semigroup.hpp"

namespace profinite {

// A letter-to-element map; extends multiplicatively to nonempty words.
struct Morphism {
  Alphabet alphabet;
  FiniteSemigroup codomain;
  std::vector<Element> letterImage;  // indexed like the alphabet

  Element image(std::string_view word) const;  // throws DomainError on empty/foreign
};

struct SyntacticResult {
  Morphism morphism;         // codomain is the syntactic semigroup (or monoid)
  ElementSet accepting;      // image of the language
  bool containsEmptyWord = false;
  // Set when the empty word is in the language; the codomain is then the
  // syntactic monoid and this is its identity (the image of the empty word).
  std::optional<Element> emptyWordImage;
  Dfa minimalDfa;
};

// Transition semigroup of the minimal complete DFA. When the language
// contains the empty word the identity transformation is included, giving
// the syntactic monoid.
SyntacticResult syntacticSemigroup(const Regex& r, const Alphabet& alphabet);

// True iff the image of the nonempty word w lies in `accept`.
bool recognizes(const Morphism& m, const ElementSet& accept, std::string_view w);

}  // namespace profinite
