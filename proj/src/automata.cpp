#include "profinite/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "profinite/error.hpp"

namespace profinite {

State Nfa::addState() {
  edges.emplace_back();
  epsilon.emplace_back();
  finals.push_back(false);
  return State(states++);
}

void Nfa::addEdge(State from, std::size_t letter, State to) { edges[from].push_back({letter, to}); }
void Nfa::addEpsilon(State from, State to) { epsilon[from].push_back(to); }

namespace {

std::size_t letterIndex(const Alphabet& alphabet, char c) {
  const auto pos = alphabet.find(c);
  if (pos == std::string::npos)
    throw DomainError(std::string("letter '") + c + "' is not in the alphabet");
  return pos;
}

// Builds a fragment for r between fresh states; returns (start, end).
std::pair<State, State> build(Nfa& nfa, const Regex& r) {
  using K = Regex::Kind;
  const State s = nfa.addState();
  const State t = nfa.addState();
  switch (r.kind()) {
    case K::Empty:
      break;
    case K::Epsilon:
      nfa.addEpsilon(s, t);
      break;
    case K::Letter:
      if (r.inverse()) throw DomainError("inverse letters are not allowed in a word language");
      nfa.addEdge(s, letterIndex(nfa.alphabet, r.letter()), t);
      break;
    case K::Union: {
      auto [a0, a1] = build(nfa, r.left());
      auto [b0, b1] = build(nfa, r.right());
      nfa.addEpsilon(s, a0);
      nfa.addEpsilon(s, b0);
      nfa.addEpsilon(a1, t);
      nfa.addEpsilon(b1, t);
      break;
    }
    case K::Concat: {
      auto [a0, a1] = build(nfa, r.left());
      auto [b0, b1] = build(nfa, r.right());
      nfa.addEpsilon(s, a0);
      nfa.addEpsilon(a1, b0);
      nfa.addEpsilon(b1, t);
      break;
    }
    case K::Star:
    case K::Plus: {
      auto [a0, a1] = build(nfa, r.left());
      nfa.addEpsilon(s, a0);
      nfa.addEpsilon(a1, t);
      nfa.addEpsilon(a1, a0);
      if (r.kind() == K::Star) nfa.addEpsilon(s, t);
      break;
    }
  }
  return {s, t};
}

std::vector<State> epsilonClosure(const Nfa& nfa, std::vector<State> set) {
  std::vector<bool> in(nfa.states);
  for (State q : set) in[q] = true;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (State t : nfa.epsilon[set[i]])
      if (!in[t]) {
        in[t] = true;
        set.push_back(t);
      }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

Nfa thompson(const Regex& r, const Alphabet& alphabet) {
  Nfa nfa;
  nfa.alphabet = alphabet;
  auto [s, t] = build(nfa, r);
  nfa.initials = {s};
  nfa.finals[t] = true;
  return nfa;
}

Dfa determinize(const Nfa& nfa) {
  Dfa dfa;
  dfa.alphabet = nfa.alphabet;
  const std::size_t k = nfa.alphabet.size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> set) {
    auto [it, fresh] = ids.emplace(set, State(subsets.size()));
    if (fresh) {
      subsets.push_back(std::move(set));
      dfa.delta.emplace_back(k);
    }
    return it->second;
  };
  dfa.initial = intern(epsilonClosure(nfa, nfa.initials));
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<State> next;
      for (State q : subsets[i])
        for (auto [letter, t] : nfa.edges[q])
          if (letter == a) next.push_back(t);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const State target = intern(epsilonClosure(nfa, std::move(next)));
      dfa.delta[i][a] = target;
    }
  dfa.finals.resize(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    dfa.finals[i] = std::any_of(subsets[i].begin(), subsets[i].end(),
                                [&](State q) { return nfa.finals[q]; });
  return dfa;
}

TransitionTable minimize(const TransitionTable& dfa) {
  const std::size_t k = dfa.delta.empty() ? 0 : dfa.delta.front().size();
  // Reachable states.
  std::vector<bool> reach(dfa.delta.size());
  std::vector<State> order{dfa.initial};
  reach[dfa.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < k; ++a) {
      const State t = dfa.delta[order[i]][a];
      if (!reach[t]) {
        reach[t] = true;
        order.push_back(t);
      }
    }

  // Moore refinement: class ids from (own class, classes of successors).
  std::vector<std::size_t> cls(dfa.delta.size(), 0);
  for (State q : order) cls[q] = dfa.finals[q] ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig;
    std::vector<std::size_t> next(dfa.delta.size(), 0);
    for (State q : order) {
      std::vector<std::size_t> key{cls[q]};
      for (std::size_t a = 0; a < k; ++a) key.push_back(cls[dfa.delta[q][a]]);
      next[q] = sig.emplace(std::move(key), sig.size()).first->second;
    }
    const std::size_t newCount = sig.size();
    cls = std::move(next);
    if (newCount == count) break;
    count = newCount;
  }

  // Renumber classes breadth-first from the initial state.
  TransitionTable out;
  std::map<std::size_t, State> number;
  std::vector<State> repr;
  auto intern = [&](State q) {
    auto [it, fresh] = number.emplace(cls[q], State(repr.size()));
    if (fresh) repr.push_back(q);
    return it->second;
  };
  out.initial = intern(dfa.initial);
  for (std::size_t i = 0; i < repr.size(); ++i) {
    std::vector<State> row(k);
    for (std::size_t a = 0; a < k; ++a) row[a] = intern(dfa.delta[repr[i]][a]);
    out.delta.push_back(std::move(row));
  }
  for (State q : repr) out.finals.push_back(dfa.finals[q]);
  return out;
}

Dfa minimize(const Dfa& dfa) {
  TransitionTable t = minimize(TransitionTable{dfa.delta, dfa.initial, dfa.finals});
  return Dfa{dfa.alphabet, std::move(t.delta), t.initial, std::move(t.finals)};
}

Dfa toMinimalDfa(const Regex& r, const Alphabet& alphabet) {
  return minimize(determinize(thompson(r, alphabet)));
}

State Dfa::run(State from, std::string_view word) const {
  State q = from;
  for (char c : word) q = delta[q][letterIndex(alphabet, c)];
  return q;
}

bool Dfa::accepts(std::string_view word) const { return finals[run(initial, word)]; }

// ---------------------------------------------------------------------------

Regex dfaToRegex(const Dfa& dfa) {
  std::vector<Regex> letters;
  for (char c : dfa.alphabet) letters.push_back(Regex::letter(c));
  return dfaToRegex(TransitionTable{dfa.delta, dfa.initial, dfa.finals}, letters);
}

Regex dfaToRegex(const TransitionTable& dfa, const std::vector<Regex>& letters) {
  const std::size_t n = dfa.delta.size();
  const std::size_t k = letters.size();

  // Keep only states that are reachable and co-reachable.
  std::vector<bool> reach(n), coreach(n);
  std::vector<State> stack{dfa.initial};
  reach[dfa.initial] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < k; ++a)
      if (!reach[dfa.delta[q][a]]) {
        reach[dfa.delta[q][a]] = true;
        stack.push_back(dfa.delta[q][a]);
      }
  }
  for (State q = 0; q < n; ++q)
    if (dfa.finals[q]) coreach[q] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q)
      for (std::size_t a = 0; a < k && !coreach[q]; ++a)
        if (coreach[dfa.delta[q][a]]) coreach[q] = changed = true;
  }
  if (!coreach[dfa.initial]) return Regex::empty();

  // Generalized automaton: node n is the fresh start, n+1 the fresh end.
  const std::size_t start = n, end = n + 1;
  std::vector<std::vector<Regex>> edge(n + 2, std::vector<Regex>(n + 2, Regex::empty()));
  std::vector<bool> alive(n + 2, false);
  alive[start] = alive[end] = true;
  for (State q = 0; q < n; ++q) alive[q] = reach[q] && coreach[q];
  edge[start][dfa.initial] = Regex::epsilon();
  for (State q = 0; q < n; ++q) {
    if (!alive[q]) continue;
    if (dfa.finals[q]) edge[q][end] = Regex::epsilon();
    for (std::size_t a = 0; a < k; ++a) {
      const State t = dfa.delta[q][a];
      if (alive[t]) edge[q][t] = simplifiedUnion(edge[q][t], letters[a]);
    }
  }

  // Eliminate states, cheapest first (fewest in-edges times out-edges).
  while (true) {
    std::size_t best = n, bestCost = 0;
    for (State q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      std::size_t in = 0, out = 0;
      for (std::size_t p = 0; p < n + 2; ++p) {
        if (p == q || !alive[p]) continue;
        if (edge[p][q].kind() != Regex::Kind::Empty) ++in;
        if (edge[q][p].kind() != Regex::Kind::Empty) ++out;
      }
      if (best == n || in * out < bestCost) {
        best = q;
        bestCost = in * out;
      }
    }
    if (best == n) break;
    const Regex loop = simplifiedStar(edge[best][best]);
    alive[best] = false;
    for (std::size_t p = 0; p < n + 2; ++p) {
      if (!alive[p] || edge[p][best].kind() == Regex::Kind::Empty) continue;
      for (std::size_t r = 0; r < n + 2; ++r) {
        if (!alive[r] || edge[best][r].kind() == Regex::Kind::Empty) continue;
        edge[p][r] = simplifiedUnion(
            edge[p][r], simplifiedConcat(edge[p][best], simplifiedConcat(loop, edge[best][r])));
      }
    }
  }
  return edge[start][end];
}

// ---------------------------------------------------------------------------

TransitionSemigroup transitionSemigroup(const Dfa& dfa, bool adjoinIdentity) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet.size();
  if (k == 0) throw DomainError("transition semigroup over an empty alphabet");

  using Transformation = std::vector<State>;
  std::map<Transformation, Element> ids;
  TransitionSemigroup out{FiniteSemigroup::fromTable({{0}}), {}, {}, {}, {}};
  auto intern = [&](Transformation f, std::string word) {
    auto [it, fresh] = ids.emplace(f, Element(out.transformations.size()));
    if (fresh) {
      out.transformations.push_back(std::move(f));
      out.representatives.push_back(std::move(word));
    }
    return it->second;
  };

  std::vector<Transformation> letters(k, Transformation(n));
  for (std::size_t a = 0; a < k; ++a) {
    for (State q = 0; q < n; ++q) letters[a][q] = dfa.delta[q][a];
    out.letterImage.push_back(intern(letters[a], std::string{dfa.alphabet[a]}));
  }
  // Breadth-first right multiplication by letters reaches every element.
  for (std::size_t i = 0; i < out.transformations.size(); ++i)
    for (std::size_t a = 0; a < k; ++a) {
      Transformation g(n);
      for (State q = 0; q < n; ++q) g[q] = letters[a][out.transformations[i][q]];
      intern(std::move(g), out.representatives[i] + dfa.alphabet[a]);
    }
  if (adjoinIdentity) {
    Transformation id(n);
    for (State q = 0; q < n; ++q) id[q] = q;
    out.emptyWordImage = intern(std::move(id), "1");
  }

  const std::size_t m = out.transformations.size();
  Table table(m, std::vector<Element>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      Transformation g(n);
      for (State q = 0; q < n; ++q) g[q] = out.transformations[y][out.transformations[x][q]];
      table[x][y] = ids.at(g);
    }
  out.semigroup = FiniteSemigroup::fromTable(std::move(table), out.emptyWordImage,
                                             out.representatives);
  return out;
}

}  // namespace profinite
