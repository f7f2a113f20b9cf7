#pragma once

// Closures of regular languages in the pro-group topology, separation by
// group languages, the group kernel of a finite monoid, group-pointlike
// subsets and Mal'cev product membership.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/free_group.hpp"
#include "profinite/kappa.hpp"
#include "profinite/regex.hpp"
#include "profinite/semigroup.hpp"
#include "profinite/syntactic.hpp"

namespace profinite {

struct ClosureResult {
  GroupAutomaton automaton;  // saturated; the closure as a subset of FG(A)
  Regex sourceRegex;

  // Membership of a positive word, the empty word included.
  bool contains(std::string_view word) const;
  bool contains(const GroupWord& w) const;
};

// Translates the expression into FG(A): letters, unions and products are
// kept, and K* and K+ become the subgroup generated by K (K+ of the empty
// set stays empty). Inverse letters in `r` are read as group inverses.
ClosureResult proGClosure(const Regex& r);

// True iff some group language contains w and is disjoint from L(r).
bool separableByGroupLanguage(std::string_view w, const Regex& r);

struct NamedGroup {
  std::string name;
  FiniteSemigroup table;
};

// C1..C6, C2xC2 and S3, every group of order at most maxOrder (<= 6).
const std::vector<NamedGroup>& smallGroups(std::size_t maxOrder = 6);

struct SeparationCertificate {
  std::string group;
  Morphism morphism;  // into the group
  Element wordImage;
  ElementSet languageImage;
};

// Searches the small groups for a morphism whose image of w misses the
// image of L(r).
std::optional<SeparationCertificate> findSeparatingGroupMorphism(std::string_view w,
                                                                 const Regex& r,
                                                                 const Alphabet& alphabet,
                                                                 std::size_t maxOrder = 6);

// Image of L(r) under a morphism into a monoid (the empty word maps to the
// identity).
ElementSet languageImage(const Regex& r, const Alphabet& alphabet, const Morphism& m);

// --- Monoids and kernels ----------------------------------------------------

// One letter a, b, c, ... per non-identity element, in index order.
Morphism canonicalGenerators(const FiniteSemigroup& monoid);

// The language of words (the empty word included) mapped to `target`.
Regex preimageRegex(const Morphism& gens, Element target);

struct KernelResult {
  FiniteSemigroup monoid;
  ElementSet kernel;
  std::vector<ClosureStep> trace;
};

// Least submonoid containing the idempotents and closed under m -> a m b
// whenever aba = a or bab = b. Throws DomainError without an identity.
KernelResult kernelG(const FiniteSemigroup& monoid);

// {m : the empty word lies in the closure of the preimage of m}. Throws
// DomainError when `gens` is not onto.
ElementSet kernelViaClosure(const FiniteSemigroup& monoid, const Morphism& gens);

struct PointlikeResult {
  bool pointlike = false;
  std::optional<GroupWord> witness;
};

PointlikeResult gPointlike(const FiniteSemigroup& monoid, const ElementSet& subset,
                           const Morphism& gens);

// The one-loop equation xy = x under the constraint xi.
bool inevitableLoop(const FiniteSemigroup& monoid, Element xiX, Element xiY);

// The system x y_i = z under the constraint xi, where xi(x) must be 1.
// Throws UnsupportedCase otherwise.
PointlikeResult inevitableTwoVertex(const FiniteSemigroup& monoid, Element xiX,
                                    const std::vector<Element>& xiYs, Element xiZ,
                                    const Morphism& gens);

bool malcevMembership(const FiniteSemigroup& monoid, const PseudovarietyDef& w);

}  // namespace profinite
