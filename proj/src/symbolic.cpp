#include "profinite/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>

#include "profinite/error.hpp"

namespace profinite {

Substitution::Substitution(Alphabet alphabet, std::vector<std::string> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (alphabet_.empty()) throw DomainError("substitution over an empty alphabet");
  if (images_.size() != alphabet_.size())
    throw DomainError("substitution needs one image per letter");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].empty())
      throw DomainError(std::string("image of '") + alphabet_[i] + "' is empty");
    for (char c : images_[i])
      if (alphabet_.find(c) == std::string::npos)
        throw DomainError(std::string("image of '") + alphabet_[i] + "' uses foreign letter '" +
                          c + "'");
  }
}

Substitution Substitution::parse(std::string_view text) {
  std::vector<std::pair<char, std::string>> rules;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip();
    if (i == text.size()) break;
    if (!std::isalnum(static_cast<unsigned char>(text[i])))
      throw SyntaxError("expected a letter", i);
    const char from = text[i++];
    skip();
    if (text.substr(i, 2) != "->") throw SyntaxError("expected '->'", i);
    i += 2;
    skip();
    std::string image;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i])))
      image.push_back(text[i++]);
    if (image.empty()) throw SyntaxError("empty image", i);
    for (const auto& [c, _] : rules)
      if (c == from) throw SyntaxError(std::string("letter '") + from + "' defined twice", i);
    rules.emplace_back(from, std::move(image));
    skip();
    if (i == text.size()) break;
    if (text[i] != ';') throw SyntaxError("expected ';'", i);
    ++i;
  }
  if (rules.empty()) throw SyntaxError("no rules", 0);
  std::sort(rules.begin(), rules.end());
  Alphabet alphabet;
  std::vector<std::string> images;
  for (auto& [c, w] : rules) {
    alphabet.push_back(c);
    images.push_back(std::move(w));
  }
  return Substitution(std::move(alphabet), std::move(images));
}

const std::string& Substitution::image(char letter) const {
  const auto pos = alphabet_.find(letter);
  if (pos == std::string::npos) throw DomainError(std::string("no image for '") + letter + "'");
  return images_[pos];
}

std::string Substitution::apply(std::string_view word) const {
  std::string out;
  for (char c : word) out += image(c);
  return out;
}

std::string Substitution::toString() const {
  std::string out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (i) out += "; ";
    out += alphabet_[i];
    out += "->" + images_[i];
  }
  return out;
}

std::vector<std::vector<std::size_t>> Substitution::incidence() const {
  const std::size_t k = alphabet_.size();
  std::vector<std::vector<std::size_t>> m(k, std::vector<std::size_t>(k, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (char c : images_[a]) ++m[alphabet_.find(c)][a];
  return m;
}

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix boolProduct(const BoolMatrix& x, const BoolMatrix& y) {
  const std::size_t k = x.size();
  BoolMatrix z(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (x[i][j])
        for (std::size_t l = 0; l < k; ++l)
          if (y[j][l]) z[i][l] = true;
  return z;
}

std::size_t wielandt(std::size_t k) { return (k - 1) * (k - 1) + 1; }

}  // namespace

bool isPrimitive(const Substitution& s) {
  const auto m = s.incidence();
  const std::size_t k = m.size();
  BoolMatrix base(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) base[i][j] = m[i][j] > 0;
  // Square-and-multiply up to the bound.
  BoolMatrix result;
  BoolMatrix power = base;
  for (std::size_t e = wielandt(k); e; e >>= 1) {
    if (e & 1) result = result.empty() ? power : boolProduct(result, power);
    power = boolProduct(power, power);
  }
  for (const auto& row : result)
    for (bool b : row)
      if (!b) return false;
  return true;
}

bool isPrimitiveByDefinition(const Substitution& s) {
  const Alphabet& a = s.alphabet();
  // letters[i] = set of letters in s^n(a_i), as a bitmask over the alphabet.
  std::vector<std::vector<bool>> step(a.size(), std::vector<bool>(a.size(), false));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (char c : s.image(a[i])) step[i][a.find(c)] = true;
  auto letters = step;
  for (std::size_t n = 1; n <= wielandt(a.size()); ++n) {
    bool full = true;
    for (const auto& row : letters)
      for (bool b : row) full = full && b;
    if (full) return true;
    auto next = letters;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::fill(next[i].begin(), next[i].end(), false);
      for (std::size_t j = 0; j < a.size(); ++j)
        if (letters[i][j])
          for (std::size_t l = 0; l < a.size(); ++l)
            if (step[j][l]) next[i][l] = true;
    }
    letters = std::move(next);
  }
  return false;
}

std::set<std::string> substitutionBlocks(const Substitution& s, std::size_t n) {
  if (n == 0) throw DomainError("block length must be positive");
  if (!isPrimitive(s)) throw DomainError("substitution is not primitive");
  constexpr std::size_t kLengthCap = std::size_t(1) << 24;

  std::vector<std::string> words;
  for (char c : s.alphabet()) words.emplace_back(1, c);
  auto factors = [&] {
    std::set<std::string> out;
    for (const auto& w : words)
      for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
    return out;
  };

  std::set<std::string> previous = factors();
  bool longEnough = false;
  while (true) {
    std::size_t total = 0;
    bool grew = false;
    for (auto& w : words) {
      std::string next = s.apply(w);
      grew = grew || next.size() > w.size();
      w = std::move(next);
      total += w.size();
    }
    if (!grew && !longEnough) throw DomainError("substitution does not grow; blocks undefined");
    if (total > kLengthCap) throw DomainError("block iteration exceeded the length cap");
    std::set<std::string> current = factors();
    const bool ready = std::all_of(words.begin(), words.end(),
                                   [&](const std::string& w) { return w.size() >= n; });
    if (ready && longEnough && current == previous) return current;
    longEnough = ready;
    previous = std::move(current);
  }
}

bool blockComplexityLooksBounded(const Substitution& s, std::size_t from, std::size_t to) {
  if (from == 0 || to < from) throw DomainError("invalid length window");
  const std::size_t base = substitutionBlocks(s, from).size();
  for (std::size_t n = from + 1; n <= to; ++n)
    if (substitutionBlocks(s, n).size() != base) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

Dfa blockLanguage(const Alphabet& alphabet, std::size_t states,
                  const std::vector<std::vector<std::pair<std::size_t, State>>>& edges,
                  const std::vector<bool>& keep) {
  Nfa nfa;
  nfa.alphabet = alphabet;
  for (std::size_t q = 0; q < states; ++q) nfa.addState();
  for (State q = 0; q < states; ++q) {
    if (!keep[q]) continue;
    nfa.initials.push_back(q);
    nfa.finals[q] = true;
    for (auto [a, t] : edges[q])
      if (keep[t]) nfa.addEdge(q, a, t);
  }
  return minimize(determinize(nfa));
}

// Strongly connected components of the graph given by `succ`, as a component
// id per vertex.
std::vector<std::size_t> components(const std::vector<std::vector<State>>& succ,
                                    std::size_t& count) {
  const std::size_t n = succ.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (State s = 0; s < n; ++s) {
    std::vector<State> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const State q = stack.back();
      stack.pop_back();
      for (State t : succ[q])
        if (!reach[s][t]) {
          reach[s][t] = true;
          stack.push_back(t);
        }
    }
  }
  std::vector<std::size_t> id(n, std::numeric_limits<std::size_t>::max());
  count = 0;
  for (State s = 0; s < n; ++s) {
    if (id[s] != std::numeric_limits<std::size_t>::max()) continue;
    for (State t = 0; t < n; ++t)
      if (reach[s][t] && reach[t][s]) id[t] = count;
    ++count;
  }
  return id;
}

}  // namespace

SoficShift factorialTrim(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet.size();
  std::vector<bool> keep(n, false);

  // Useful states: reachable from the initial state and co-reachable to a
  // final state.
  std::vector<bool> reachable(n, false);
  std::vector<State> stack{dfa.initial};
  reachable[dfa.initial] = true;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State t : dfa.delta[q])
      if (!reachable[t]) {
        reachable[t] = true;
        stack.push_back(t);
      }
  }
  std::vector<bool> coreachable(dfa.finals.begin(), dfa.finals.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q)
      if (!coreachable[q])
        for (State t : dfa.delta[q])
          if (coreachable[t]) {
            coreachable[q] = changed = true;
            break;
          }
  }
  for (State q = 0; q < n; ++q) keep[q] = reachable[q] && coreachable[q];

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> hasIn(n, false), hasOut(n, false);
    for (State q = 0; q < n; ++q) {
      if (!keep[q]) continue;
      for (State t : dfa.delta[q])
        if (keep[t]) hasOut[q] = hasIn[t] = true;
    }
    for (State q = 0; q < n; ++q)
      if (keep[q] && !(hasIn[q] && hasOut[q])) keep[q] = !(changed = true);
  }

  std::vector<State> renumber(n, 0);
  SoficShift x;
  x.alphabet = dfa.alphabet;
  for (State q = 0; q < n; ++q)
    if (keep[q]) renumber[q] = State(x.states++);
  if (x.states == 0) throw DomainError("not a subshift: no bi-infinite paths remain");
  x.edges.resize(x.states);
  for (State q = 0; q < n; ++q) {
    if (!keep[q]) continue;
    for (std::size_t a = 0; a < k; ++a)
      if (keep[dfa.delta[q][a]]) x.edges[renumber[q]].push_back({a, renumber[dfa.delta[q][a]]});
  }
  x.blockDfa = blockLanguage(x.alphabet, x.states, x.edges, std::vector<bool>(x.states, true));
  return x;
}

SoficShift soficShift(const Regex& r, const Alphabet& alphabet) {
  return factorialTrim(toMinimalDfa(r, alphabet));
}

bool isIrreducible(const SoficShift& x) {
  std::vector<std::vector<State>> succ(x.states);
  for (State q = 0; q < x.states; ++q)
    for (auto [a, t] : x.edges[q]) succ[q].push_back(t);
  std::size_t count = 0;
  const auto id = components(succ, count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<bool> keep(x.states);
    for (State q = 0; q < x.states; ++q) keep[q] = id[q] == c;
    if (blockLanguage(x.alphabet, x.states, x.edges, keep) == x.blockDfa) return true;
  }
  return false;
}

namespace {

std::vector<std::string> blocksUpTo(const SoficShift& x, std::size_t maxLength) {
  std::vector<std::string> out;
  std::vector<std::string> frontier{""};
  for (std::size_t len = 1; len <= maxLength; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (char c : x.alphabet)
        if (x.isBlock(w + c)) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

bool isIrreducibleByDefinition(const SoficShift& x, std::size_t maxBlock, std::size_t maxBridge) {
  const Dfa& d = x.blockDfa;
  const auto blocks = blocksUpTo(x, maxBlock);
  for (const auto& u : blocks) {
    // States reachable after u followed by a bridge of length <= maxBridge.
    std::set<State> frontier{d.run(d.initial, u)}, seen = frontier;
    for (std::size_t len = 0; len < maxBridge; ++len) {
      std::set<State> next;
      for (State q : frontier)
        for (State t : d.delta[q])
          if (d.finals[t] && seen.insert(t).second) next.insert(t);
      frontier = std::move(next);
    }
    for (const auto& v : blocks) {
      const bool joined = std::any_of(seen.begin(), seen.end(),
                                      [&](State q) { return d.finals[d.run(q, v)]; });
      if (!joined) return false;
    }
  }
  return true;
}

double entropy(const SoficShift& x) {
  const Dfa& d = x.blockDfa;
  // Non-sink states of the block DFA; since the block language is factorial,
  // every non-accepting state is dead.
  std::vector<State> live;
  std::vector<std::size_t> index(d.size(), std::numeric_limits<std::size_t>::max());
  for (State q = 0; q < d.size(); ++q)
    if (d.finals[q]) {
      index[q] = live.size();
      live.push_back(q);
    }
  const std::size_t n = live.size();
  std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<State>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (State t : d.delta[live[i]])
      if (index[t] != std::numeric_limits<std::size_t>::max()) {
        adj[i][index[t]] += 1.0;
        succ[i].push_back(State(index[t]));
      }

  std::size_t count = 0;
  const auto id = components(succ, count);
  double radius = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (id[i] == c) members.push_back(i);
    const std::size_t m = members.size();
    bool cyclic = m > 1;
    if (m == 1) cyclic = adj[members[0]][members[0]] > 0;
    if (!cyclic) continue;

    // Power iteration on B = A_C + I, which is primitive on an irreducible
    // component; the Collatz-Wielandt ratios bracket the spectral radius.
    std::vector<double> v(m, 1.0), w(m);
    double lo = 0, hi = 0;
    for (int iter = 0; iter < 1000000; ++iter) {
      for (std::size_t i = 0; i < m; ++i) {
        double s = v[i];
        for (std::size_t j = 0; j < m; ++j) s += adj[members[i]][members[j]] * v[j];
        w[i] = s;
      }
      lo = std::numeric_limits<double>::infinity();
      hi = 0;
      double top = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double r = w[i] / v[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        top = std::max(top, w[i]);
      }
      if (hi - lo <= 1e-12 * hi) break;
      for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / top;
    }
    radius = std::max(radius, (lo + hi) / 2 - 1.0);
  }
  if (radius <= 1.0) return 0.0;
  return std::log2(radius);
}

double blockCount(const SoficShift& x, std::size_t n) {
  const Dfa& d = x.blockDfa;
  std::vector<double> ways(d.size(), 0.0);
  ways[d.initial] = 1.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<double> next(d.size(), 0.0);
    for (State q = 0; q < d.size(); ++q)
      if (ways[q] > 0)
        for (State t : d.delta[q])
          if (d.finals[t]) next[t] += ways[q];
    ways = std::move(next);
  }
  double total = 0;
  for (State q = 0; q < d.size(); ++q)
    if (d.finals[q]) total += ways[q];
  return total;
}

SoficShift forbidFactor(const SoficShift& x, std::string_view w) {
  if (w.empty()) throw DomainError("cannot forbid the empty word");
  const Alphabet& alphabet = x.alphabet;
  // Words containing w: a loop, the letters of w, a loop.
  Nfa contains;
  contains.alphabet = alphabet;
  for (std::size_t i = 0; i <= w.size(); ++i) contains.addState();
  contains.initials.push_back(0);
  contains.finals[w.size()] = true;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    contains.addEdge(0, a, 0);
    contains.addEdge(State(w.size()), a, State(w.size()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto a = alphabet.find(w[i]);
    if (a == std::string::npos)
      throw DomainError(std::string("letter '") + w[i] + "' is not in the alphabet");
    contains.addEdge(State(i), a, State(i + 1));
  }
  const Dfa avoid = minimize(determinize(contains));

  const Dfa& b = x.blockDfa;
  Dfa product;
  product.alphabet = alphabet;
  product.initial = b.initial * State(avoid.size()) + avoid.initial;
  for (State p = 0; p < b.size(); ++p)
    for (State q = 0; q < avoid.size(); ++q) {
      std::vector<State> row;
      for (std::size_t a = 0; a < alphabet.size(); ++a)
        row.push_back(b.delta[p][a] * State(avoid.size()) + avoid.delta[q][a]);
      product.delta.push_back(std::move(row));
      product.finals.push_back(b.finals[p] && !avoid.finals[q]);
    }
  return factorialTrim(minimize(product));
}

}  // namespace profinite
