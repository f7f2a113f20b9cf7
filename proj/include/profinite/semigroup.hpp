#pragma once

// Finite semigroups given by their multiplication tables, together with the
// structure theory the rest of the toolkit relies on: omega powers, Green's
// relations, structural predicates, closures and small-order enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace profinite {

using Element = std::uint32_t;
using ElementSet = std::set<Element>;
using Table = std::vector<std::vector<Element>>;

class FiniteSemigroup {
 public:
  // Validates the table (square, entries in range, associative) and the
  // optional metadata. Throws MalformedTable on any violation.
  static FiniteSemigroup fromTable(Table table,
                                   std::optional<Element> identity = {},
                                   std::optional<std::vector<std::string>> labels = {},
                                   std::optional<ElementSet> generators = {});

  std::size_t order() const { return n_; }
  Element mul(Element a, Element b) const { return flat_[a * n_ + b]; }
  Element power(Element s, std::size_t k) const;  // k >= 1
  Element product(std::span<const Element> factors) const;  // nonempty

  const std::optional<Element>& identity() const { return identity_; }
  const std::optional<std::vector<std::string>>& labels() const { return labels_; }
  const std::optional<ElementSet>& generators() const { return generators_; }

  // The declared identity, or a two-sided identity found in the table.
  std::optional<Element> monoidIdentity() const;
  bool isIdempotent(Element e) const { return mul(e, e) == e; }
  std::vector<Element> idempotents() const;

  std::string label(Element e) const;
  Table table() const;
  const std::vector<Element>& flat() const { return flat_; }

  // S^1: returns *this when an identity already exists, else adjoins one.
  FiniteSemigroup withOne() const;
  // S^I: always adjoins a fresh identity (the new element has index order()).
  FiniteSemigroup withFreshIdentity() const;
  // Subsemigroup on `subset` with the induced table; elements are renumbered
  // in increasing order. Throws ContractViolation if `subset` is not closed.
  FiniteSemigroup induced(const ElementSet& subset) const;

  friend bool operator==(const FiniteSemigroup&, const FiniteSemigroup&) = default;

 private:
  FiniteSemigroup() = default;

  std::size_t n_ = 0;
  std::vector<Element> flat_;
  std::optional<Element> identity_;
  std::optional<std::vector<std::string>> labels_;
  std::optional<ElementSet> generators_;
};

// True iff the table is associative. Throws MalformedTable when the table is
// not square or has an entry outside [0, n).
bool checkAssociativity(const Table& table);

struct MonogenicProfile {
  Element element;
  std::size_t index;   // least i with s^i in the cyclic part
  std::size_t period;
  Element omega;
  Element omegaMinusOne;
};

MonogenicProfile monogenicProfile(const FiniteSemigroup& s, Element x);

// s^{omega+q} for an arbitrary integer offset, computed directly from the
// index and period of the monogenic subsemigroup.
Element omegaPower(const FiniteSemigroup& s, Element x, long offset);

struct Partition {
  std::vector<std::vector<Element>> classes;  // each sorted; ordered by least member
  std::vector<std::size_t> classOf;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Meet of two partitions of the same set.
Partition intersect(const Partition& a, const Partition& b);

struct GreenData {
  Partition r, l, j, h;
  // jOrder[x][y] holds iff J-class x lies below J-class y, i.e. S^1 x S^1 is
  // contained in S^1 y S^1. Indices refer to j.classes.
  std::vector<std::vector<bool>> jOrder;
};

GreenData greenRelations(const FiniteSemigroup& s);

struct StructuralPredicates {
  bool isGroup = false;
  bool isAperiodic = false;
  bool isJTrivial = false;
  bool isSemilattice = false;
  bool isNilpotent = false;
  bool isCompletelyRegular = false;
};

StructuralPredicates structuralPredicates(const FiniteSemigroup& s);

// Looks up a predicate by its name ("isGroup", "isAperiodic", ...).
bool structuralCheck(const StructuralPredicates& p, const std::string& name);

struct UnaryRule {
  std::string name;
  std::function<Element(Element)> apply;
};

struct ClosureStep {
  Element added;
  std::string via;
};

// Least superset of `seed` closed under the product and under every rule.
// When `trace` is given, one step is recorded per element added.
ElementSet subsemigroupClosure(const FiniteSemigroup& s, const ElementSet& seed,
                               std::span<const UnaryRule> rules = {},
                               std::vector<ClosureStep>* trace = nullptr);

// Lexicographically minimal flattened table over all relabelings.
std::vector<Element> canonicalForm(const FiniteSemigroup& s);

// All associative tables of order n (1 <= n <= 4), or one representative per
// isomorphism class when uptoIso is set (the canonical, lexicographically
// least table). The output is sorted by flattened table. `threads` = 0 reads
// PROFINITE_KIT_THREADS and falls back to 1.
std::vector<FiniteSemigroup> enumerateSemigroups(std::size_t n, bool uptoIso,
                                                 unsigned threads = 0);

}  // namespace profinite
