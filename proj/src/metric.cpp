#include "profinite/metric.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "profinite/error.hpp"

namespace profinite {

namespace {

const std::vector<FiniteSemigroup>& catalog(std::size_t n) {
  static std::mutex lock;
  static std::map<std::size_t, std::vector<FiniteSemigroup>> cache;
  std::lock_guard guard(lock);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerateSemigroups(n, true)).first;
  return it->second;
}

}  // namespace

RankResult separationRank(std::string_view u, std::string_view v, const PseudovarietyDef& pv,
                          std::size_t maxOrder) {
  if (u.empty() || v.empty()) throw DomainError("words must be nonempty");
  if (maxOrder < 1 || maxOrder > 4)
    throw UnsupportedOrder("maxOrder must lie between 1 and 4");
  const Alphabet alphabet = makeAlphabet(std::string(u) + std::string(v));

  RankResult result;
  result.bound = maxOrder;
  if (u == v) {
    result.kind = RankResult::Kind::Infinite;
    return result;
  }
  for (std::size_t n = 1; n <= maxOrder; ++n)
    for (const FiniteSemigroup& s : catalog(n)) {
      if (!member(s, pv).member) continue;
      std::vector<Element> images(alphabet.size(), 0);
      while (true) {
        Morphism m{alphabet, s, images};
        if (m.image(u) != m.image(v)) {
          result.kind = RankResult::Kind::Exact;
          result.rank = n;
          result.witness = std::move(m);
          return result;
        }
        std::size_t i = images.size();
        while (i > 0 && ++images[i - 1] == n) images[--i] = 0;
        if (i == 0) break;
      }
    }
  return result;
}

Distance distance(const RankResult& rank) {
  switch (rank.kind) {
    case RankResult::Kind::Exact:
      return {true, std::ldexp(1.0, -int(rank.rank)), 0, 0};
    case RankResult::Kind::Infinite:
      return {true, 0.0, 0, 0};
    case RankResult::Kind::ExceedsBound:
      return {false, 0, 0.0, std::ldexp(1.0, -int(rank.bound + 1))};
  }
  return {};
}

Distance distance(std::string_view u, std::string_view v, const PseudovarietyDef& pv,
                  std::size_t maxOrder) {
  return distance(separationRank(u, v, pv, maxOrder));
}

}  // namespace profinite
