#pragma once

// The pro-V pseudo-ultrametric on words: the least order of a semigroup in V
// separating two words, searched exhaustively over small semigroups.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "profinite/kappa.hpp"
#include "profinite/syntactic.hpp"

namespace profinite {

struct RankResult {
  enum class Kind {
    Exact,         // rank holds the least separating order
    Infinite,      // u == v: nothing separates them
    ExceedsBound,  // no separating semigroup of order <= bound
  };
  Kind kind = Kind::ExceedsBound;
  std::size_t rank = 0;
  std::size_t bound = 0;
  std::optional<Morphism> witness;  // codomain has order `rank`
};

// Searches orders 1..maxOrder in enumeration order (canonical tables, then
// letter assignments in lexicographic order), keeping semigroups in V.
RankResult separationRank(std::string_view u, std::string_view v, const PseudovarietyDef& pv,
                          std::size_t maxOrder = 4);

struct Distance {
  bool exact = false;
  double value = 0;  // when exact
  double lower = 0;  // interval bounds otherwise
  double upper = 0;
};

// 2^{-rank} for an exact rank, 0 for equal words, and the interval
// [0, 2^{-(maxOrder+1)}] when the search bound is exceeded.
Distance distance(const RankResult& rank);
Distance distance(std::string_view u, std::string_view v, const PseudovarietyDef& pv,
                  std::size_t maxOrder = 4);

}  // namespace profinite
