#include "profinite/semigroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <thread>

#include "profinite/error.hpp"

namespace profinite {

namespace {

std::size_t validateShape(const Table& table) {
  const std::size_t n = table.size();
  if (n == 0) throw MalformedTable("table must have at least one row");
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n)
      throw MalformedTable("row " + std::to_string(r) + " has " +
                           std::to_string(table[r].size()) + " entries, expected " +
                           std::to_string(n));
    for (std::size_t c = 0; c < n; ++c)
      if (table[r][c] >= n)
        throw MalformedTable("entry [" + std::to_string(r) + "][" + std::to_string(c) +
                             "] = " + std::to_string(table[r][c]) + " is out of range");
  }
  return n;
}

}  // namespace

bool checkAssociativity(const Table& table) {
  const std::size_t n = validateShape(table);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) return false;
  return true;
}

FiniteSemigroup FiniteSemigroup::fromTable(Table table, std::optional<Element> identity,
                                           std::optional<std::vector<std::string>> labels,
                                           std::optional<ElementSet> generators) {
  const std::size_t n = validateShape(table);
  if (!checkAssociativity(table)) throw MalformedTable("table is not associative");

  FiniteSemigroup s;
  s.n_ = n;
  s.flat_.reserve(n * n);
  for (const auto& row : table) s.flat_.insert(s.flat_.end(), row.begin(), row.end());

  if (identity) {
    if (*identity >= n) throw MalformedTable("identity index out of range");
    for (Element x = 0; x < n; ++x)
      if (s.mul(*identity, x) != x || s.mul(x, *identity) != x)
        throw MalformedTable("element " + std::to_string(*identity) + " is not an identity");
  }
  s.identity_ = identity;

  if (labels && labels->size() != n)
    throw MalformedTable("labels has " + std::to_string(labels->size()) +
                         " entries, expected " + std::to_string(n));
  s.labels_ = std::move(labels);

  if (generators) {
    if (generators->empty()) throw MalformedTable("generator set is empty");
    for (Element g : *generators)
      if (g >= n) throw MalformedTable("generator index out of range");
    if (subsemigroupClosure(s, *generators).size() != n)
      throw MalformedTable("generators do not generate the semigroup");
  }
  s.generators_ = std::move(generators);
  return s;
}

Element FiniteSemigroup::power(Element s, std::size_t k) const {
  Element result = s;
  for (std::size_t i = 1; i < k; ++i) result = mul(result, s);
  return result;
}

Element FiniteSemigroup::product(std::span<const Element> factors) const {
  if (factors.empty()) throw DomainError("empty product in a semigroup");
  Element result = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) result = mul(result, factors[i]);
  return result;
}

std::optional<Element> FiniteSemigroup::monoidIdentity() const {
  if (identity_) return identity_;
  for (Element e = 0; e < n_; ++e) {
    bool ok = true;
    for (Element x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

std::vector<Element> FiniteSemigroup::idempotents() const {
  std::vector<Element> out;
  for (Element e = 0; e < n_; ++e)
    if (isIdempotent(e)) out.push_back(e);
  return out;
}

std::string FiniteSemigroup::label(Element e) const {
  if (labels_) return (*labels_)[e];
  return std::to_string(e);
}

Table FiniteSemigroup::table() const {
  Table t(n_, std::vector<Element>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(Element(a), Element(b));
  return t;
}

FiniteSemigroup FiniteSemigroup::withOne() const {
  if (auto e = monoidIdentity()) {
    FiniteSemigroup copy = *this;
    copy.identity_ = e;
    return copy;
  }
  return withFreshIdentity();
}

FiniteSemigroup FiniteSemigroup::withFreshIdentity() const {
  const auto one = Element(n_);
  Table t(n_ + 1, std::vector<Element>(n_ + 1));
  for (Element a = 0; a <= n_; ++a)
    for (Element b = 0; b <= n_; ++b)
      t[a][b] = a == one ? b : b == one ? a : mul(a, b);
  std::optional<std::vector<std::string>> labels;
  if (labels_) {
    labels = *labels_;
    labels->push_back("1");
  }
  std::optional<ElementSet> gens;
  if (generators_) {
    gens = *generators_;
    gens->insert(one);
  }
  return fromTable(std::move(t), one, std::move(labels), std::move(gens));
}

FiniteSemigroup FiniteSemigroup::induced(const ElementSet& subset) const {
  if (subset.empty()) throw ContractViolation("induced subsemigroup of an empty set");
  std::vector<Element> members(subset.begin(), subset.end());
  std::map<Element, Element> index;
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = Element(i);
  Table t(members.size(), std::vector<Element>(members.size()));
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b) {
      auto it = index.find(mul(members[a], members[b]));
      if (it == index.end()) throw ContractViolation("subset is not closed under product");
      t[a][b] = it->second;
    }
  std::optional<Element> id;
  if (identity_ && index.contains(*identity_)) id = index[*identity_];
  std::optional<std::vector<std::string>> labels;
  if (labels_) {
    labels.emplace();
    for (Element m : members) labels->push_back((*labels_)[m]);
  }
  return fromTable(std::move(t), id, std::move(labels));
}

// ---------------------------------------------------------------------------
// Omega powers

MonogenicProfile monogenicProfile(const FiniteSemigroup& s, Element x) {
  // seen[y] = k means y = x^k for the first time at exponent k.
  std::vector<std::size_t> seen(s.order(), 0);
  Element cur = x;
  std::size_t k = 1;
  while (seen[cur] == 0) {
    seen[cur] = k;
    cur = s.mul(cur, x);
    ++k;
  }
  MonogenicProfile p;
  p.element = x;
  p.index = seen[cur];
  p.period = k - seen[cur];
  p.omega = omegaPower(s, x, 0);
  p.omegaMinusOne = omegaPower(s, x, -1);
  return p;
}

Element omegaPower(const FiniteSemigroup& s, Element x, long offset) {
  std::vector<std::size_t> seen(s.order(), 0);
  Element cur = x;
  std::size_t k = 1;
  while (seen[cur] == 0) {
    seen[cur] = k;
    cur = s.mul(cur, x);
    ++k;
  }
  const auto index = static_cast<long>(seen[cur]);
  const auto period = static_cast<long>(k - seen[cur]);
  // Least exponent e >= index with e congruent to offset modulo period.
  long r = ((offset % period) + period) % period;
  long e = index + ((r - index % period) % period + period) % period;
  return s.power(x, static_cast<std::size_t>(e));
}

// ---------------------------------------------------------------------------
// Green's relations

namespace {

Partition partitionByKey(std::size_t n, const std::vector<std::vector<bool>>& keys) {
  Partition p;
  p.classOf.assign(n, 0);
  std::map<std::vector<bool>, std::size_t> ids;
  for (Element x = 0; x < n; ++x) {
    auto [it, fresh] = ids.emplace(keys[x], p.classes.size());
    if (fresh) p.classes.emplace_back();
    p.classes[it->second].push_back(x);
    p.classOf[x] = it->second;
  }
  return p;
}

}  // namespace

Partition intersect(const Partition& a, const Partition& b) {
  const std::size_t n = a.classOf.size();
  Partition p;
  p.classOf.assign(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  for (Element x = 0; x < n; ++x) {
    auto [it, fresh] = ids.emplace(std::pair{a.classOf[x], b.classOf[x]}, p.classes.size());
    if (fresh) p.classes.emplace_back();
    p.classes[it->second].push_back(x);
    p.classOf[x] = it->second;
  }
  return p;
}

GreenData greenRelations(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  // Ideals are computed in S^1; the adjoined identity only contributes x itself.
  std::vector<std::vector<bool>> right(n, std::vector<bool>(n)), left = right, twoSided = right;
  for (Element x = 0; x < n; ++x) {
    right[x][x] = left[x][x] = twoSided[x][x] = true;
    for (Element y = 0; y < n; ++y) {
      right[x][s.mul(x, y)] = true;
      left[x][s.mul(y, x)] = true;
      twoSided[x][s.mul(x, y)] = true;
      twoSided[x][s.mul(y, x)] = true;
      for (Element z = 0; z < n; ++z) twoSided[x][s.mul(s.mul(y, x), z)] = true;
    }
  }
  GreenData g;
  g.r = partitionByKey(n, right);
  g.l = partitionByKey(n, left);
  g.j = partitionByKey(n, twoSided);
  g.h = intersect(g.r, g.l);

  const std::size_t k = g.j.classes.size();
  g.jOrder.assign(k, std::vector<bool>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const Element ra = g.j.classes[a].front();
      const Element rb = g.j.classes[b].front();
      g.jOrder[a][b] = twoSided[rb][ra];
    }
  return g;
}

StructuralPredicates structuralPredicates(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  const GreenData g = greenRelations(s);
  StructuralPredicates p;

  p.isAperiodic = true;
  for (Element x = 0; x < n; ++x)
    if (monogenicProfile(s, x).period != 1) p.isAperiodic = false;

  p.isGroup = g.h.classes.size() == 1;
  p.isJTrivial = g.j.classes.size() == n;

  bool commutative = true, idempotent = true;
  for (Element x = 0; x < n; ++x) {
    idempotent = idempotent && s.isIdempotent(x);
    for (Element y = 0; y < n; ++y) commutative = commutative && s.mul(x, y) == s.mul(y, x);
  }
  p.isSemilattice = commutative && idempotent;

  const auto idem = s.idempotents();
  p.isNilpotent = false;
  if (idem.size() == 1) {
    const Element z = idem.front();
    bool zero = true;
    for (Element x = 0; x < n; ++x) zero = zero && s.mul(z, x) == z && s.mul(x, z) == z;
    p.isNilpotent = zero;
  }

  std::vector<bool> hasIdempotent(g.h.classes.size());
  for (Element e : idem) hasIdempotent[g.h.classOf[e]] = true;
  p.isCompletelyRegular = true;
  for (Element x = 0; x < n; ++x)
    if (!hasIdempotent[g.h.classOf[x]]) p.isCompletelyRegular = false;
  return p;
}

bool structuralCheck(const StructuralPredicates& p, const std::string& name) {
  if (name == "isGroup") return p.isGroup;
  if (name == "isAperiodic") return p.isAperiodic;
  if (name == "isJTrivial") return p.isJTrivial;
  if (name == "isSemilattice") return p.isSemilattice;
  if (name == "isNilpotent") return p.isNilpotent;
  if (name == "isCompletelyRegular") return p.isCompletelyRegular;
  throw NotFound("unknown structural predicate '" + name + "'");
}

// ---------------------------------------------------------------------------
// Closure engine

ElementSet subsemigroupClosure(const FiniteSemigroup& s, const ElementSet& seed,
                               std::span<const UnaryRule> rules,
                               std::vector<ClosureStep>* trace) {
  if (seed.empty()) throw DomainError("closure seed must be nonempty");
  ElementSet closed;
  std::deque<Element> pending;
  auto add = [&](Element x, auto&& describe) {
    if (closed.insert(x).second) {
      pending.push_back(x);
      if (trace) trace->push_back({x, describe()});
    }
  };
  for (Element x : seed) add(x, [] { return std::string("seed"); });

  while (!pending.empty()) {
    const Element x = pending.front();
    pending.pop_front();
    const std::vector<Element> snapshot(closed.begin(), closed.end());
    for (Element y : snapshot) {
      add(s.mul(x, y), [&] { return "product " + s.label(x) + "*" + s.label(y); });
      add(s.mul(y, x), [&] { return "product " + s.label(y) + "*" + s.label(x); });
    }
    for (const auto& rule : rules)
      add(rule.apply(x), [&] { return rule.name + "(" + s.label(x) + ")"; });
  }
  return closed;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Element> canonicalForm(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Element> best = s.flat();
  std::vector<Element> candidate(n * n);
  do {
    // perm maps old labels to new labels.
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) candidate[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
    if (candidate < best) best = candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

constexpr Element kUnset = ~Element(0);

struct TableSearch {
  std::size_t n;
  std::vector<Element> cells;
  std::vector<std::vector<Element>>* out;

  bool consistent() const {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Element ab = cells[a * n + b];
        if (ab == kUnset) continue;
        for (std::size_t c = 0; c < n; ++c) {
          const Element bc = cells[b * n + c];
          if (bc == kUnset) continue;
          const Element lhs = cells[ab * n + c];
          const Element rhs = cells[a * n + bc];
          if (lhs != kUnset && rhs != kUnset && lhs != rhs) return false;
        }
      }
    return true;
  }

  void run(std::size_t cell) {
    if (cell == n * n) {
      out->push_back(cells);
      return;
    }
    for (Element v = 0; v < n; ++v) {
      cells[cell] = v;
      if (consistent()) run(cell + 1);
    }
    cells[cell] = kUnset;
  }
};

unsigned threadSetting(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PROFINITE_KIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

FiniteSemigroup fromFlat(std::size_t n, const std::vector<Element>& flat) {
  Table t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = flat[a * n + b];
  return FiniteSemigroup::fromTable(std::move(t));
}

}  // namespace

std::vector<FiniteSemigroup> enumerateSemigroups(std::size_t n, bool uptoIso, unsigned threads) {
  if (n < 1 || n > 4)
    throw UnsupportedOrder("enumeration supports orders 1 to 4, got " + std::to_string(n));

  // Work is split on the value of the first cell; each worker owns one bucket.
  std::vector<std::vector<std::vector<Element>>> buckets(n);
  auto work = [&](Element first) {
    TableSearch search{n, std::vector<Element>(n * n, kUnset), &buckets[first]};
    search.cells[0] = first;
    if (search.consistent()) search.run(1);
  };
  const unsigned workers = std::min<unsigned>(threadSetting(threads), unsigned(n));
  if (workers <= 1) {
    for (Element v = 0; v < n; ++v) work(v);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (Element v = w; v < n; v += workers) work(v);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<FiniteSemigroup> result;
  for (const auto& bucket : buckets)
    for (const auto& flat : bucket) {
      FiniteSemigroup s = fromFlat(n, flat);
      if (!uptoIso || canonicalForm(s) == flat) result.push_back(std::move(s));
    }
  // Buckets are already in lexicographic order of the flattened table.
  return result;
}

}  // namespace profinite
