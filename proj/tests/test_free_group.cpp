#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "profinite/error.hpp"
#include "profinite/free_group.hpp"

using namespace profinite;

namespace {

// Oracle spelling (upper case = inverse) to and from GroupWord.
GroupWord fromOracle(const std::string& s) {
  std::vector<SignedLetter> raw;
  for (char c : s)
    raw.push_back({char(std::tolower(static_cast<unsigned char>(c))),
                   bool(std::isupper(static_cast<unsigned char>(c)))});
  return GroupWord::reduce(raw);
}

std::string toOracle(const GroupWord& w) {
  std::string s;
  for (const auto& x : w.letters()) s += x.inverse ? char(std::toupper(x.letter)) : x.letter;
  return s;
}

GroupAutomaton fromOracle(const oracle::SignedNfa& n) {
  GroupAutomaton m;
  for (std::size_t i = 0; i < n.states; ++i) m.addState();
  for (const auto& [from, c, to] : n.edges) {
    const GroupWord w = fromOracle(std::string(1, c));
    m.addEdge(std::uint32_t(from), w.letters()[0], std::uint32_t(to));
  }
  for (auto q : n.initials) m.initials.insert(std::uint32_t(q));
  for (auto q : n.finals) m.finals.insert(std::uint32_t(q));
  return m;
}

std::string randomReduced(std::mt19937& rng, const std::string& letters, std::size_t len) {
  std::string doubled;
  for (char c : letters) {
    doubled += c;
    doubled += oracle::inv(c);
  }
  std::string w;
  while (w.size() < len) {
    const char c = doubled[rng() % doubled.size()];
    if (w.empty() || w.back() != oracle::inv(c)) w += c;
  }
  return w;
}

oracle::SignedNfa randomSignedNfa(std::mt19937& rng, std::size_t states, std::size_t edges) {
  oracle::SignedNfa n;
  n.states = states;
  const std::string labels = "aAbB";
  for (std::size_t i = 0; i < edges; ++i)
    n.edges.push_back({rng() % states, labels[rng() % 4], rng() % states});
  n.initials = {0};
  for (std::size_t q = 0; q < states; ++q)
    if (rng() % 3 == 0) n.finals.insert(q);
  if (n.finals.empty()) n.finals.insert(states - 1);
  return n;
}

GroupWord W(const char* text) { return GroupWord::parse(text); }

}  // namespace

TEST_CASE("reduced words") {
  CHECK(W("b a' a b' a").toString() == "a");
  CHECK(W("~").isIdentity());
  CHECK(W("ab'a").toString() == "ab'a");
  CHECK(W("ab'a").inverse().toString() == "a'ba'");
  CHECK((W("ab") * W("b'a'")).isIdentity());
  CHECK_THROWS_AS(W(""), SyntaxError);
  CHECK_THROWS_AS(W("'a"), SyntaxError);
  CHECK_THROWS_AS(W("a''"), SyntaxError);
  CHECK_THROWS_AS(W("a+b"), SyntaxError);
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    std::string raw;
    for (int k = 0, len = int(rng() % 12); k < len; ++k) raw += "aAbB"[rng() % 4];
    CHECK(toOracle(fromOracle(raw)) == oracle::reduce(raw));
  }
}

TEST_CASE("Stallings graphs") {
  const GroupAutomaton trivial = stallingsGraph({});
  CHECK(trivial.states == 1);
  CHECK(subgroupContains(trivial, W("~")));
  CHECK_FALSE(subgroupContains(trivial, W("a")));

  const GroupAutomaton powersOfA = stallingsGraph({W("a")});
  CHECK(isStallingsGraph(powersOfA));
  CHECK(subgroupContains(powersOfA, W("aaaaa")));
  CHECK(subgroupContains(powersOfA, W("a'a'")));
  CHECK_FALSE(subgroupContains(powersOfA, W("b")));

  const GroupAutomaton h = stallingsGraph({W("aa"), W("ab")});
  CHECK(subgroupContains(h, W("b'a'aa")));  // (ab)^-1 a^2 reduces to b'a
  CHECK(subgroupContains(h, W("b'a")));
  CHECK_FALSE(subgroupContains(h, W("a")));
  CHECK_FALSE(subgroupContains(h, W("b")));

  GroupAutomaton unfolded;
  const auto p = unfolded.addState(), q = unfolded.addState(), r = unfolded.addState();
  unfolded.addEdge(p, {'a', false}, q);
  unfolded.addEdge(p, {'a', false}, r);
  unfolded.initials = {p};
  unfolded.finals = {p};
  CHECK_FALSE(isStallingsGraph(unfolded));
  CHECK_THROWS_AS(subgroupContains(unfolded, W("a")), ContractViolation);
}

TEST_CASE("Stallings membership agrees with the subgroup ball") {
  std::mt19937 rng(11);
  const auto probes = oracle::reducedWords("ab", 5);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> gens;
    std::vector<GroupWord> words;
    for (int k = 0, count = 1 + int(rng() % 3); k < count; ++k) {
      gens.push_back(randomReduced(rng, "ab", 1 + rng() % 4));
      words.push_back(fromOracle(gens.back()));
    }
    const GroupAutomaton g = stallingsGraph(words);
    REQUIRE(isStallingsGraph(g));
    // Everything the ball reaches is in the subgroup; short elements are
    // reached within the bound for generators this short.
    const auto ball = oracle::subgroupBall(gens, 10);
    for (const auto& w : probes)
      CHECK_MESSAGE(subgroupContains(g, fromOracle(w)) == (ball.count(w) > 0),
                    "gens " << gens.size() << " first " << gens[0] << " probe " << w);
  }
}

TEST_CASE("Benois saturation") {
  GroupAutomaton m;
  const auto s0 = m.addState(), s1 = m.addState(), s2 = m.addState();
  m.addEdge(s0, {'a', false}, s1);
  m.addEdge(s1, {'a', true}, s2);
  m.initials = {s0};
  m.finals = {s2};
  CHECK(rationalMembership(m, W("~")));
  CHECK_FALSE(rationalMembership(m, W("a")));

  // (a b b')* a
  GroupAutomaton n;
  const auto t0 = n.addState(), t1 = n.addState(), t2 = n.addState(), t3 = n.addState();
  n.addEdge(t0, {'a', false}, t1);
  n.addEdge(t1, {'b', false}, t2);
  n.addEdge(t2, {'b', true}, t0);
  n.addEdge(t0, {'a', false}, t3);
  n.initials = {t0};
  n.finals = {t3};
  CHECK(rationalMembership(n, W("a")));
  CHECK(rationalMembership(n, W("aa")));
  CHECK(rationalMembership(n, W("aaaa")));
  CHECK_FALSE(rationalMembership(n, W("~")));
  CHECK_FALSE(rationalMembership(n, W("ab")));

  const GroupAutomaton once = benoisSaturate(n);
  CHECK(once.saturated);
  CHECK(benoisSaturate(once).epsilonCount() == once.epsilonCount());
}

TEST_CASE("rational membership agrees with reductions of accepted words") {
  std::mt19937 rng(17);
  const auto probes = oracle::reducedWords("ab", 5);
  for (int i = 0; i < 80; ++i) {
    const auto n = randomSignedNfa(rng, 2 + rng() % 3, 3 + rng() % 5);
    const GroupAutomaton m = fromOracle(n);
    const auto reached = oracle::reductionsOfAccepted(n, 12);
    const ReducedDfa d = reducedDfa(m, {'a', 'b'});
    const GroupAutomaton norm = normalize(m);
    for (const auto& w : probes) {
      const bool expected = reached.count(w) > 0;
      const GroupWord g = fromOracle(w);
      CHECK(rationalMembership(m, g) == expected);
      CHECK(d.accepts(g) == expected);
      CHECK(rationalMembership(norm, g) == expected);
    }
    CHECK(sameSubset(m, norm));
  }
}

TEST_CASE("rational operations") {
  const GroupAutomaton ab = wordSet(W("ab"));
  const GroupAutomaton generated = generatedSubgroup(ab);
  CHECK_FALSE(rationalMembership(generated, W("ba")));
  CHECK(rationalMembership(generated, W("b'a'b'a'")));
  CHECK(rationalMembership(generated, W("~")));
  CHECK_FALSE(rationalMembership(generated, W("a")));

  const GroupAutomaton aOrInverse = star(unite(wordSet(W("a")), wordSet(W("a'"))));
  CHECK(rationalMembership(aOrInverse, W("a'a'a'")));
  CHECK_FALSE(rationalMembership(aOrInverse, W("b")));

  CHECK(sameSubset(invert(invert(generated)), generated));
  CHECK(sameSubset(invert(wordSet(W("ab"))), wordSet(W("b'a'"))));
  CHECK(rationalMembership(concat(wordSet(W("ab")), wordSet(W("b'"))), W("a")));
  CHECK_FALSE(rationalMembership(emptySet(), W("~")));
  CHECK(rationalMembership(identitySet(), W("~")));

  // The subgroup generated by one word matches its Stallings graph.
  std::mt19937 rng(23);
  const auto probes = oracle::reducedWords("ab", 6);
  for (int i = 0; i < 20; ++i) {
    const GroupWord w = fromOracle(randomReduced(rng, "ab", 1 + rng() % 4));
    const GroupAutomaton viaRational = generatedSubgroup(wordSet(w));
    const GroupAutomaton viaStallings = stallingsGraph({w});
    for (const auto& p : probes)
      CHECK(rationalMembership(viaRational, fromOracle(p)) ==
            subgroupContains(viaStallings, fromOracle(p)));
  }
}

TEST_CASE("intersections") {
  const GroupAutomaton a = generatedSubgroup(wordSet(W("a")));
  const GroupAutomaton b = generatedSubgroup(wordSet(W("b")));
  auto w = rationalIntersectionNonempty(a, b);
  REQUIRE(w);
  CHECK(w->isIdentity());
  CHECK_FALSE(rationalIntersectionNonempty(wordSet(W("a")), wordSet(W("b"))));

  const GroupAutomaton a2 = generatedSubgroup(wordSet(W("aa")));
  const GroupAutomaton a3a4 = unite(wordSet(W("aaa")), wordSet(W("aaaa")));
  w = rationalIntersectionNonempty(a2, a3a4);
  REQUIRE(w);
  CHECK(w->toString() == "aaaa");
  const GroupAutomaton both = intersect(a2, a3a4);
  CHECK(rationalMembership(both, W("aaaa")));
  CHECK_FALSE(rationalMembership(both, W("aaa")));

  // Against the bounded oracle: the witness lies in both subsets and is no
  // longer than the shortest common element found by enumeration.
  std::mt19937 rng(29);
  for (int i = 0; i < 80; ++i) {
    const auto n1 = randomSignedNfa(rng, 2 + rng() % 2, 3 + rng() % 4);
    const auto n2 = randomSignedNfa(rng, 2 + rng() % 2, 3 + rng() % 4);
    const auto r1 = oracle::reductionsOfAccepted(n1, 10);
    const auto r2 = oracle::reductionsOfAccepted(n2, 10);
    std::optional<std::size_t> shortest;
    for (const auto& x : r1)
      if (r2.count(x) && (!shortest || x.size() < *shortest)) shortest = x.size();
    const GroupAutomaton m1 = fromOracle(n1), m2 = fromOracle(n2);
    const auto witness = rationalIntersectionNonempty(m1, m2);
    if (shortest) {
      REQUIRE(witness);
      CHECK(witness->length() <= *shortest);
    }
    if (witness) {
      CHECK(rationalMembership(m1, *witness));
      CHECK(rationalMembership(m2, *witness));
      if (witness->length() <= 4) CHECK(shortest);
    }
  }
}

TEST_CASE("regex export of a subset") {
  const GroupAutomaton h = generatedSubgroup(wordSet(W("ab")));
  const Regex r = toRegex(h);
  CHECK_FALSE(r.toString().empty());
  CHECK(toRegex(emptySet()).kind() == Regex::Kind::Empty);
  CHECK(toRegex(identitySet()).kind() == Regex::Kind::Epsilon);
}
