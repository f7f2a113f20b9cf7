#include "profinite/closure.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "profinite/automata.hpp"
#include "profinite/error.hpp"

namespace profinite {

namespace {

GroupAutomaton translate(const Regex& r) {
  using K = Regex::Kind;
  switch (r.kind()) {
    case K::Empty:
      return emptySet();
    case K::Epsilon:
      return identitySet();
    case K::Letter:
      return wordSet(GroupWord::reduce(std::vector<SignedLetter>{{r.letter(), r.inverse()}}));
    case K::Union:
      return normalize(unite(translate(r.left()), translate(r.right())));
    case K::Concat:
      return normalize(concat(translate(r.left()), translate(r.right())));
    case K::Star:
      return normalize(generatedSubgroup(translate(r.left())));
    case K::Plus: {
      GroupAutomaton inner = translate(r.left());
      if (inner.finals.empty()) return inner;  // normalized empty set
      return normalize(generatedSubgroup(inner));
    }
  }
  return emptySet();
}

}  // namespace

ClosureResult proGClosure(const Regex& r) { return {translate(r), r}; }

bool ClosureResult::contains(std::string_view word) const {
  return rationalMembership(automaton, GroupWord::positive(word));
}

bool ClosureResult::contains(const GroupWord& w) const { return rationalMembership(automaton, w); }

bool separableByGroupLanguage(std::string_view w, const Regex& r) {
  if (w.empty()) throw DomainError("separation is defined for nonempty words");
  return !proGClosure(r).contains(w);
}

// ---------------------------------------------------------------------------

namespace {

NamedGroup cyclic(std::size_t n) {
  Table t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = Element((a + b) % n);
  return {"C" + std::to_string(n), FiniteSemigroup::fromTable(std::move(t), 0)};
}

NamedGroup kleinFour() {
  Table t(4, std::vector<Element>(4));
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return {"C2xC2", FiniteSemigroup::fromTable(std::move(t), 0)};
}

NamedGroup symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Table t(6, std::vector<Element>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      // Apply a, then b.
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[b][perms[a][i]];
      t[a][b] = Element(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return {"S3", FiniteSemigroup::fromTable(std::move(t), 0)};
}

}  // namespace

const std::vector<NamedGroup>& smallGroups(std::size_t maxOrder) {
  static const std::vector<NamedGroup> all = [] {
    std::vector<NamedGroup> g;
    for (std::size_t n = 1; n <= 6; ++n) {
      g.push_back(cyclic(n));
      if (n == 4) g.push_back(kleinFour());
      if (n == 6) g.push_back(symmetric3());
    }
    return g;
  }();
  static std::map<std::size_t, std::vector<NamedGroup>> byBound;
  auto it = byBound.find(maxOrder);
  if (it == byBound.end()) {
    std::vector<NamedGroup> subset;
    for (const auto& g : all)
      if (g.table.order() <= maxOrder) subset.push_back(g);
    it = byBound.emplace(maxOrder, std::move(subset)).first;
  }
  return it->second;
}

ElementSet languageImage(const Regex& r, const Alphabet& alphabet, const Morphism& m) {
  const Dfa dfa = toMinimalDfa(r, alphabet);
  const auto one = m.codomain.monoidIdentity();
  if (!one) throw DomainError("language image needs a monoid codomain");
  std::vector<Element> images;
  for (char c : alphabet) {
    const auto pos = m.alphabet.find(c);
    if (pos == std::string::npos)
      throw DomainError(std::string("morphism has no image for '") + c + "'");
    images.push_back(m.letterImage[pos]);
  }
  const std::size_t n = m.codomain.order();
  std::vector<bool> seen(dfa.size() * n);
  std::vector<std::pair<State, Element>> stack{{dfa.initial, *one}};
  seen[dfa.initial * n + *one] = true;
  ElementSet out;
  while (!stack.empty()) {
    auto [q, g] = stack.back();
    stack.pop_back();
    if (dfa.finals[q]) out.insert(g);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      const State q2 = dfa.delta[q][a];
      const Element g2 = m.codomain.mul(g, images[a]);
      if (!seen[q2 * n + g2]) {
        seen[q2 * n + g2] = true;
        stack.push_back({q2, g2});
      }
    }
  }
  return out;
}

std::optional<SeparationCertificate> findSeparatingGroupMorphism(std::string_view w,
                                                                 const Regex& r,
                                                                 const Alphabet& alphabet,
                                                                 std::size_t maxOrder) {
  for (const auto& group : smallGroups(maxOrder)) {
    const std::size_t n = group.table.order();
    std::vector<Element> images(alphabet.size(), 0);
    while (true) {
      Morphism m{alphabet, group.table, images};
      const Element wi = m.image(w);
      ElementSet li = languageImage(r, alphabet, m);
      if (!li.contains(wi)) return SeparationCertificate{group.name, m, wi, std::move(li)};
      std::size_t i = images.size();
      while (i > 0 && ++images[i - 1] == n) images[--i] = 0;
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Morphism canonicalGenerators(const FiniteSemigroup& monoid) {
  const auto one = monoid.monoidIdentity();
  if (!one) throw DomainError("canonical generators need a monoid");
  static const std::string pool =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::map<char, Element> assigned;
  std::size_t next = 0;
  for (Element x = 0; x < monoid.order(); ++x) {
    if (x == *one) continue;
    if (next == pool.size()) throw DomainError("too many generators for the letter pool");
    assigned[pool[next++]] = x;
  }
  Morphism m{"", monoid, {}};
  for (auto [c, x] : assigned) {
    m.alphabet.push_back(c);
    m.letterImage.push_back(x);
  }
  if (m.alphabet.empty()) {
    // The trivial monoid: a single letter mapped to the identity.
    m.alphabet = "a";
    m.letterImage = {*one};
  }
  return m;
}

namespace {

Dfa preimageDfa(const Morphism& gens, Element target) {
  const auto one = gens.codomain.monoidIdentity();
  if (!one) throw DomainError("preimage languages need a monoid");
  Dfa dfa;
  dfa.alphabet = gens.alphabet;
  dfa.initial = *one;
  for (Element x = 0; x < gens.codomain.order(); ++x) {
    std::vector<State> row;
    for (Element g : gens.letterImage) row.push_back(gens.codomain.mul(x, g));
    dfa.delta.push_back(std::move(row));
    dfa.finals.push_back(x == target);
  }
  return minimize(dfa);
}

void requireOnto(const FiniteSemigroup& monoid, const Morphism& gens) {
  const auto one = monoid.monoidIdentity();
  if (!one) throw DomainError("expected a monoid (no identity element)");
  if (!(gens.codomain == monoid)) throw DomainError("morphism codomain differs from the monoid");
  std::vector<bool> seen(monoid.order());
  std::vector<Element> stack{*one};
  seen[*one] = true;
  while (!stack.empty()) {
    const Element x = stack.back();
    stack.pop_back();
    for (Element g : gens.letterImage) {
      const Element y = monoid.mul(x, g);
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw DomainError("non-surjective morphism");
}

}  // namespace

Regex preimageRegex(const Morphism& gens, Element target) {
  return dfaToRegex(preimageDfa(gens, target));
}

KernelResult kernelG(const FiniteSemigroup& monoid) {
  const auto one = monoid.monoidIdentity();
  if (!one) throw DomainError("the group kernel is defined for monoids");
  const std::size_t n = monoid.order();

  std::vector<UnaryRule> rules;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const bool weak = monoid.mul(monoid.mul(a, b), a) == a || monoid.mul(monoid.mul(b, a), b) == b;
      if (!weak) continue;
      rules.push_back({"wconj[" + monoid.label(a) + "," + monoid.label(b) + "]",
                       [&monoid, a, b](Element m) { return monoid.mul(monoid.mul(a, m), b); }});
    }

  ElementSet seed{*one};
  for (Element e : monoid.idempotents()) seed.insert(e);

  KernelResult result{monoid, {}, {}};
  result.kernel = subsemigroupClosure(monoid, seed, rules, &result.trace);
  return result;
}

ElementSet kernelViaClosure(const FiniteSemigroup& monoid, const Morphism& gens) {
  requireOnto(monoid, gens);
  const GroupWord identity;
  ElementSet out;
  for (Element m = 0; m < monoid.order(); ++m)
    if (proGClosure(preimageRegex(gens, m)).contains(identity)) out.insert(m);
  return out;
}

PointlikeResult gPointlike(const FiniteSemigroup& monoid, const ElementSet& subset,
                           const Morphism& gens) {
  if (subset.empty()) throw DomainError("pointlike subsets must be nonempty");
  requireOnto(monoid, gens);
  for (Element x : subset)
    if (x >= monoid.order()) throw DomainError("element out of range");

  std::vector<GroupAutomaton> closures;
  for (Element x : subset) closures.push_back(proGClosure(preimageRegex(gens, x)).automaton);
  GroupAutomaton acc = closures.front();
  for (std::size_t i = 1; i + 1 < closures.size(); ++i) acc = intersect(acc, closures[i]);
  const GroupAutomaton& last = closures.back();
  auto witness = rationalIntersectionNonempty(acc, last);
  return {witness.has_value(), std::move(witness)};
}

bool inevitableLoop(const FiniteSemigroup& monoid, Element /*xiX*/, Element xiY) {
  return kernelG(monoid).kernel.contains(xiY);
}

PointlikeResult inevitableTwoVertex(const FiniteSemigroup& monoid, Element xiX,
                                    const std::vector<Element>& xiYs, Element xiZ,
                                    const Morphism& gens) {
  const auto one = monoid.monoidIdentity();
  if (!one) throw DomainError("expected a monoid (no identity element)");
  if (xiX != *one)
    throw UnsupportedCase("the two-vertex criterion is only known when x is constrained to 1");
  ElementSet subset(xiYs.begin(), xiYs.end());
  subset.insert(xiZ);
  return gPointlike(monoid, subset, gens);
}

bool malcevMembership(const FiniteSemigroup& monoid, const PseudovarietyDef& w) {
  const KernelResult k = kernelG(monoid);
  FiniteSemigroup sub = [&] {
    try {
      return monoid.induced(k.kernel);
    } catch (const ContractViolation& e) {
      throw Error(std::string("internal error: kernel is not a submonoid: ") + e.what());
    }
  }();
  return member(sub, w).member;
}

}  // namespace profinite
