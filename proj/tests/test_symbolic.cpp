#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "profinite/error.hpp"
#include "profinite/symbolic.hpp"
#include "random_regex.hpp"

using namespace profinite;
using testing_support::naiveMatch;
using testing_support::randomRegex;

namespace {

// Length-n factors of s^k(a) for every letter, with k large enough that
// each iterate is at least `minLength` long.
std::set<std::string> factorsOfIterates(const Substitution& s, std::size_t n,
                                        std::size_t minLength) {
  std::set<std::string> out;
  for (char a : s.alphabet()) {
    std::string w(1, a);
    while (w.size() < minLength) {
      std::string next;
      for (char c : w) next += s.image(c);
      w = std::move(next);
    }
    for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  }
  return out;
}

// Every letter occurs in every s^k(a), by iterating words, for k <= bound.
bool primitiveOracle(const Substitution& s) {
  const std::size_t k = s.alphabet().size();
  const std::size_t bound = (k - 1) * (k - 1) + 1;
  std::vector<std::string> words;
  for (char a : s.alphabet()) words.emplace_back(1, a);
  for (std::size_t step = 1; step <= bound; ++step) {
    bool all = true;
    for (auto& w : words) {
      std::string next;
      for (char c : w) next += s.image(c);
      w = std::move(next);
      for (char c : s.alphabet()) all = all && w.find(c) != std::string::npos;
    }
    if (all) return true;
  }
  return false;
}

Substitution randomSubstitution(std::mt19937& rng, const Alphabet& alphabet) {
  std::vector<std::string> images;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    std::string w(1 + rng() % 3, 'a');
    for (auto& c : w) c = alphabet[rng() % alphabet.size()];
    images.push_back(w);
  }
  return Substitution(alphabet, images);
}

SoficShift shift(const char* regex, const Alphabet& alphabet = "ab") {
  return soficShift(parseRegex(regex, alphabet), alphabet);
}

const double goldenMean = std::log2((1 + std::sqrt(5.0)) / 2);

}  // namespace

TEST_CASE("substitutions") {
  const Substitution tm = Substitution::parse("a->ab; b->ba");
  CHECK(tm.toString() == "a->ab; b->ba");
  CHECK(tm.apply("abba") == "abbabaab");
  CHECK(tm.image('b') == "ba");
  CHECK(tm.incidence() == std::vector<std::vector<std::size_t>>{{1, 1}, {1, 1}});
  CHECK(Substitution::parse("b->a;a->ab").toString() == "a->ab; b->a");
  CHECK(Substitution::parse("a->ab; b->a").incidence() ==
        std::vector<std::vector<std::size_t>>{{1, 1}, {1, 0}});

  CHECK_THROWS_AS(Substitution("ab", {"ab", ""}), DomainError);
  CHECK_THROWS_AS(Substitution("ab", {"ab", "c"}), DomainError);
  CHECK_THROWS_AS(Substitution("ab", {"ab"}), DomainError);
  CHECK_THROWS_AS(Substitution::parse("a->ab; b"), SyntaxError);
  CHECK_THROWS_AS(Substitution::parse("a->ab; a->b"), SyntaxError);
  CHECK_THROWS_AS(Substitution::parse(""), SyntaxError);
}

TEST_CASE("primitivity") {
  CHECK(isPrimitive(Substitution::parse("a->ab; b->ba")));
  CHECK_FALSE(isPrimitive(Substitution::parse("a->a; b->b")));
  CHECK_FALSE(isPrimitive(Substitution::parse("a->ab; b->b")));
  CHECK(isPrimitive(Substitution::parse("a->ab; b->a")));
  CHECK(isPrimitive(Substitution::parse("a->b; b->c; c->ab")));
  CHECK(isPrimitive(Substitution::parse("a->aa")));

  std::mt19937 rng(73);
  int primitive = 0;
  for (int i = 0; i < 500; ++i) {
    const Substitution s = randomSubstitution(rng, i % 2 ? "ab" : "abc");
    const bool expected = primitiveOracle(s);
    CHECK_MESSAGE(isPrimitive(s) == expected, s.toString());
    CHECK_MESSAGE(isPrimitiveByDefinition(s) == expected, s.toString());
    primitive += expected;
  }
  CHECK(primitive > 50);
  CHECK(primitive < 450);
}

TEST_CASE("substitution blocks") {
  const Substitution tm = Substitution::parse("a->ab; b->ba");
  CHECK(substitutionBlocks(tm, 2) == std::set<std::string>{"aa", "ab", "ba", "bb"});
  CHECK(substitutionBlocks(tm, 1) == std::set<std::string>{"a", "b"});
  // Thue-Morse is cube-free, and has 10 blocks of length 4.
  CHECK_FALSE(substitutionBlocks(tm, 3).contains("aaa"));
  CHECK(substitutionBlocks(tm, 4).size() == 10);
  CHECK_THROWS_AS(substitutionBlocks(Substitution::parse("a->ab; b->b"), 2), DomainError);
  CHECK_THROWS_AS(substitutionBlocks(Substitution::parse("a->b; b->a"), 2), DomainError);

  std::mt19937 rng(79);
  for (int i = 0; i < 200; ++i) {
    const Substitution s = randomSubstitution(rng, i % 2 ? "ab" : "abc");
    if (!primitiveOracle(s)) continue;
    // Some power may not grow (a->b, b->a); those are rejected.
    std::set<std::string> blocks;
    try {
      blocks = substitutionBlocks(s, 1);
    } catch (const DomainError&) {
      continue;
    }
    CHECK(blocks.size() == s.alphabet().size());
    for (std::size_t n : {2, 3, 5})
      CHECK_MESSAGE(substitutionBlocks(s, n) == factorsOfIterates(s, n, 4000), s.toString());
  }
}

TEST_CASE("bounded-complexity heuristic") {
  CHECK_FALSE(blockComplexityLooksBounded(Substitution::parse("a->ab; b->ba"), 4, 10));
  CHECK_FALSE(blockComplexityLooksBounded(Substitution::parse("a->ab; b->a"), 4, 10));
  // The fixed point of a->ab, b->ab is (ab)^infinity.
  CHECK(blockComplexityLooksBounded(Substitution::parse("a->ab; b->ab"), 4, 10));
}

TEST_CASE("sofic shifts from expressions") {
  const SoficShift full = shift("(a|b)*");
  CHECK(full.states == 1);
  for (const auto& w : oracle::wordsUpTo("ab", 6, false)) CHECK(full.isBlock(w));

  // No factor bb.
  const SoficShift golden = shift("(a|ba)*(b|~)");
  CHECK(golden.states == 2);
  for (const auto& w : oracle::wordsUpTo("ab", 8, false))
    CHECK(golden.isBlock(w) == (w.find("bb") == std::string::npos));

  const SoficShift periodic = shift("(ab)*");
  for (const auto& w : oracle::wordsUpTo("ab", 8, false))
    CHECK(periodic.isBlock(w) ==
          (w.find("aa") == std::string::npos && w.find("bb") == std::string::npos));

  CHECK_THROWS_AS(shift("ab|a"), DomainError);
  CHECK_THROWS_AS(shift("#"), DomainError);
  // Only a^infinity is bi-infinite; the trailing b is trimmed away.
  CHECK(shift("a*b").isBlock("aaa"));
  CHECK_FALSE(shift("a*b").isBlock("b"));
}

TEST_CASE("block languages are factorial, extendable and come from the language") {
  std::mt19937 rng(83);
  const auto probes = oracle::wordsUpTo("ab", 5, false);
  const auto pads = oracle::wordsUpTo("ab", 4);
  int tested = 0;
  for (int i = 0; i < 300 && tested < 80; ++i) {
    const Regex r = Regex::star(randomRegex(rng, "ab", 1 + i % 6));
    SoficShift x;
    try {
      x = soficShift(r, "ab");
    } catch (const DomainError&) {
      continue;
    }
    ++tested;
    for (const auto& w : probes) {
      if (!x.isBlock(w)) continue;
      for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t len = 1; a + len <= w.size(); ++len) CHECK(x.isBlock(w.substr(a, len)));
      CHECK((x.isBlock(w + "a") || x.isBlock(w + "b")));
      CHECK((x.isBlock("a" + w) || x.isBlock("b" + w)));
      bool occurs = false;
      for (const auto& p : pads)
        for (const auto& s : pads)
          if (!occurs && naiveMatch(r, p + w + s)) occurs = true;
      CHECK_MESSAGE(occurs, r.toString() << " " << w);
    }
  }
  CHECK(tested > 20);
}

TEST_CASE("irreducibility") {
  CHECK(isIrreducible(shift("(a|b)*")));
  CHECK(isIrreducible(shift("(a|ba)*(b|~)")));
  CHECK(isIrreducible(shift("(ab)*")));
  const SoficShift twoShifts = shift("a*|b*");
  CHECK_FALSE(isIrreducible(twoShifts));
  CHECK_FALSE(isIrreducibleByDefinition(twoShifts));
  // a^infinity, then b^infinity: a can be followed by b but not conversely.
  CHECK_FALSE(isIrreducible(shift("a*b*")));

  std::mt19937 rng(89);
  int reducible = 0, tested = 0;
  for (int i = 0; i < 400 && tested < 100; ++i) {
    const Regex r = Regex::unite(Regex::star(randomRegex(rng, "ab", 1 + i % 5)),
                                 Regex::star(randomRegex(rng, "ab", 1 + i % 4)));
    SoficShift x;
    try {
      x = soficShift(r, "ab");
    } catch (const DomainError&) {
      continue;
    }
    ++tested;
    const bool irreducible = isIrreducible(x);
    CHECK_MESSAGE(irreducible == isIrreducibleByDefinition(x, 4, 8), r.toString());
    reducible += !irreducible;
  }
  CHECK(reducible > 0);
}

TEST_CASE("entropy") {
  CHECK(std::abs(entropy(shift("(a|b)*")) - 1.0) < 1e-9);
  CHECK(std::abs(entropy(shift("(a|b|c)*", "abc")) - std::log2(3.0)) < 1e-9);
  CHECK(std::abs(entropy(shift("(a|ba)*(b|~)")) - goldenMean) < 1e-9);
  CHECK(std::abs(entropy(shift("(ab)*"))) < 1e-9);
  CHECK(std::abs(entropy(shift("a*|b*"))) < 1e-9);
  // Even shift: a-runs between b's have even length; same entropy as golden mean.
  CHECK(std::abs(entropy(shift("(b|aa)*")) - goldenMean) < 1e-9);

  // Golden-mean block counts are Fibonacci numbers.
  const SoficShift golden = shift("(a|ba)*(b|~)");
  double f0 = 1, f1 = 2;
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(blockCount(golden, n) == f1);
    const double f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }

  // The block-count estimate approaches the entropy.
  for (const char* text : {"(a|ba)*(b|~)", "(b|aa)*", "(a|bb|bab)*"}) {
    const SoficShift x = shift(text);
    const double h = entropy(x);
    double previous = 1e9;
    for (std::size_t n : {10, 20, 40}) {
      const double gap = std::abs(std::log2(blockCount(x, n)) / double(n) - h);
      CHECK_MESSAGE(gap < previous, text << " n=" << n);
      previous = gap;
    }
  }

  std::mt19937 rng(97);
  for (int i = 0; i < 200; ++i) {
    const Regex r = Regex::star(randomRegex(rng, "ab", 1 + i % 7));
    SoficShift x;
    try {
      x = soficShift(r, "ab");
    } catch (const DomainError&) {
      continue;
    }
    const double h = entropy(x);
    CHECK(h >= 0);
    CHECK(h <= 1 + 1e-12);
    // Counts by enumeration over the block predicate.
    for (std::size_t n = 1; n <= 6; ++n) {
      std::size_t count = 0;
      for (const auto& w : oracle::wordsUpTo("ab", n, false))
        if (w.size() == n && x.isBlock(w)) ++count;
      CHECK(blockCount(x, n) == double(count));
    }
  }
}

TEST_CASE("forbidding a factor lowers the entropy of an irreducible shift") {
  const SoficShift golden = shift("(a|ba)*(b|~)");
  const SoficShift noAaa = forbidFactor(golden, "aaa");
  CHECK(entropy(noAaa) < entropy(golden));
  CHECK_FALSE(noAaa.isBlock("aaa"));
  CHECK(noAaa.isBlock("aabaab"));
  CHECK_THROWS_AS(forbidFactor(golden, "a"), DomainError);

  std::mt19937 rng(101);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 60; ++i) {
    const Regex r = Regex::star(randomRegex(rng, "ab", 2 + i % 6));
    SoficShift x;
    try {
      x = soficShift(r, "ab");
    } catch (const DomainError&) {
      continue;
    }
    if (!isIrreducible(x) || entropy(x) < 1e-6) continue;
    std::vector<std::string> blocks;
    for (const auto& w : oracle::wordsUpTo("ab", 4, false))
      if (w.size() >= 2 && x.isBlock(w)) blocks.push_back(w);
    const std::string w = blocks[rng() % blocks.size()];
    SoficShift y;
    try {
      y = forbidFactor(x, w);
    } catch (const DomainError&) {
      continue;  // nothing bi-infinite avoids w
    }
    ++tested;
    CHECK_MESSAGE(entropy(y) < entropy(x), r.toString() << " minus " << w);
    for (const auto& u : oracle::wordsUpTo("ab", 6, false)) {
      if (y.isBlock(u)) CHECK(x.isBlock(u));
      if (y.isBlock(u)) CHECK(u.find(w) == std::string::npos);
    }
  }
  CHECK(tested > 10);
}
