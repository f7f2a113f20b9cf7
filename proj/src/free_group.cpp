#include "profinite/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "profinite/error.hpp"

namespace profinite {

using StateId = std::uint32_t;

std::string SignedLetter::toString() const {
  return inverse ? std::string{letter, '\''} : std::string{letter};
}

GroupWord GroupWord::reduce(std::span<const SignedLetter> raw) {
  GroupWord w;
  for (const SignedLetter& x : raw) {
    if (!w.letters_.empty() && w.letters_.back() == x.inverted())
      w.letters_.pop_back();
    else
      w.letters_.push_back(x);
  }
  return w;
}

GroupWord GroupWord::positive(std::string_view letters) {
  std::vector<SignedLetter> raw;
  for (char c : letters) raw.push_back({c, false});
  return reduce(raw);
}

GroupWord GroupWord::parse(std::string_view text) {
  std::vector<SignedLetter> raw;
  bool sawIdentity = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '~') {
      sawIdentity = true;
      continue;
    }
    if (c == '\'') {
      if (raw.empty() || raw.back().inverse)
        throw SyntaxError("inverse mark without a letter", i);
      raw.back().inverse = true;
      continue;
    }
    if (!std::isalnum(static_cast<unsigned char>(c)))
      throw SyntaxError(std::string("unexpected '") + c + "'", i);
    raw.push_back({c, false});
  }
  if (raw.empty() && !sawIdentity) throw SyntaxError("empty group word (write ~)", 0);
  return reduce(raw);
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverted());
  return w;
}

std::string GroupWord::toString() const {
  if (letters_.empty()) return "~";
  std::string s;
  for (const auto& x : letters_) s += x.toString();
  return s;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  std::vector<SignedLetter> raw = a.letters_;
  raw.insert(raw.end(), b.letters_.begin(), b.letters_.end());
  return GroupWord::reduce(raw);
}

// ---------------------------------------------------------------------------

StateId GroupAutomaton::addState() {
  edges.emplace_back();
  epsilon.emplace_back();
  return StateId(states++);
}

void GroupAutomaton::addEdge(StateId from, SignedLetter label, StateId to) {
  edges[from].push_back({label, to});
}

void GroupAutomaton::addEpsilon(StateId from, StateId to) { epsilon[from].push_back(to); }

std::size_t GroupAutomaton::edgeCount() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

std::size_t GroupAutomaton::epsilonCount() const {
  std::size_t n = 0;
  for (const auto& e : epsilon) n += e.size();
  return n;
}

std::set<char> GroupAutomaton::letters() const {
  std::set<char> out;
  for (const auto& es : edges)
    for (const auto& e : es) out.insert(e.label.letter);
  return out;
}

// ---------------------------------------------------------------------------
// Stallings graphs

namespace {

struct PositiveEdge {
  StateId from;
  char letter;
  StateId to;
  auto operator<=>(const PositiveEdge&) const = default;
};

StateId findRoot(std::vector<StateId>& parent, StateId x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

GroupAutomaton stallingsGraph(const std::vector<GroupWord>& gens) {
  // Bouquet of petals at vertex 0, one per generator.
  std::size_t vertices = 1;
  std::vector<PositiveEdge> edges;
  for (const GroupWord& g : gens) {
    if (g.isIdentity()) continue;
    StateId cur = 0;
    for (std::size_t i = 0; i < g.length(); ++i) {
      const StateId next = i + 1 == g.length() ? 0 : StateId(vertices++);
      const SignedLetter x = g.letters()[i];
      if (x.inverse)
        edges.push_back({next, x.letter, cur});
      else
        edges.push_back({cur, x.letter, next});
      cur = next;
    }
  }

  // Fold: identify targets of equally labelled edges leaving a vertex.
  std::vector<StateId> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<StateId, SignedLetter>, StateId> seen;
    for (const auto& e : edges) {
      const StateId from = findRoot(parent, e.from), to = findRoot(parent, e.to);
      for (auto [src, label, dst] : {std::tuple{from, SignedLetter{e.letter, false}, to},
                                     std::tuple{to, SignedLetter{e.letter, true}, from}}) {
        auto [it, fresh] = seen.emplace(std::pair{src, label}, dst);
        if (!fresh) {
          const StateId a = findRoot(parent, it->second), b = findRoot(parent, dst);
          if (a != b) {
            // Keep the base as a root.
            if (b == findRoot(parent, 0))
              parent[a] = b;
            else
              parent[b] = a;
            changed = true;
          }
        }
      }
      if (changed) break;
    }
  }
  std::set<PositiveEdge> folded;
  for (const auto& e : edges) folded.insert({findRoot(parent, e.from), e.letter, findRoot(parent, e.to)});
  const StateId base = findRoot(parent, 0);

  // Core: repeatedly drop non-base vertices of degree at most one.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<StateId, std::size_t> degree;
    for (const auto& e : folded) {
      ++degree[e.from];
      ++degree[e.to];
    }
    for (auto it = folded.begin(); it != folded.end();) {
      const bool leafFrom = it->from != base && degree[it->from] <= 1;
      const bool leafTo = it->to != base && degree[it->to] <= 1;
      if (leafFrom || leafTo) {
        it = folded.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  // Renumber breadth-first from the base, exploring labels in order.
  std::map<StateId, std::vector<std::pair<SignedLetter, StateId>>> adj;
  for (const auto& e : folded) {
    adj[e.from].push_back({{e.letter, false}, e.to});
    adj[e.to].push_back({{e.letter, true}, e.from});
  }
  for (auto& [v, list] : adj) std::sort(list.begin(), list.end());

  GroupAutomaton g;
  g.inverseMode = true;
  g.saturated = true;
  std::map<StateId, StateId> number;
  std::vector<StateId> order;
  auto intern = [&](StateId v) {
    auto [it, fresh] = number.emplace(v, StateId(order.size()));
    if (fresh) {
      order.push_back(v);
      g.addState();
    }
    return it->second;
  };
  intern(base);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [label, to] : adj[order[i]]) g.addEdge(StateId(i), label, intern(to));
  g.initials = {0};
  g.finals = {0};
  return g;
}

bool isStallingsGraph(const GroupAutomaton& g) {
  if (!g.inverseMode || g.states == 0 || g.initials != std::set<StateId>{0} ||
      g.finals != std::set<StateId>{0} || g.epsilonCount() != 0)
    return false;
  for (StateId p = 0; p < g.states; ++p) {
    std::set<SignedLetter> labels;
    for (const auto& e : g.edges[p]) {
      if (!labels.insert(e.label).second) return false;  // not deterministic
      const auto& back = g.edges[e.to];
      if (std::none_of(back.begin(), back.end(), [&](const auto& f) {
            return f.label == e.label.inverted() && f.to == p;
          }))
        return false;
    }
    if (p != 0 && g.edges[p].size() < 2) return false;  // not core
  }
  // Connected from the base.
  std::vector<bool> seen(g.states);
  std::vector<StateId> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const StateId p = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges[p])
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool subgroupContains(const GroupAutomaton& g, const GroupWord& w) {
  if (!isStallingsGraph(g)) throw ContractViolation("subgroupContains needs a folded Stallings graph");
  StateId cur = 0;
  for (const SignedLetter& x : w.letters()) {
    const auto& out = g.edges[cur];
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.label == x; });
    if (it == out.end()) return false;
    cur = it->to;
  }
  return cur == 0;
}

// ---------------------------------------------------------------------------
// Rational subsets

GroupAutomaton emptySet() {
  GroupAutomaton m;
  m.initials.insert(m.addState());
  m.saturated = true;
  return m;
}

GroupAutomaton identitySet() {
  GroupAutomaton m;
  const StateId s = m.addState();
  m.initials.insert(s);
  m.finals.insert(s);
  m.saturated = true;
  return m;
}

GroupAutomaton wordSet(const GroupWord& w) {
  GroupAutomaton m;
  StateId cur = m.addState();
  m.initials.insert(cur);
  for (const auto& x : w.letters()) {
    const StateId next = m.addState();
    m.addEdge(cur, x, next);
    cur = next;
  }
  m.finals.insert(cur);
  m.saturated = true;  // a reduced word has no cancellation
  return m;
}

namespace {

using Reach = std::vector<std::vector<bool>>;

Reach epsilonReach(const GroupAutomaton& m) {
  Reach reach(m.states, std::vector<bool>(m.states));
  for (StateId p = 0; p < m.states; ++p) {
    std::vector<StateId> stack{p};
    reach[p][p] = true;
    while (!stack.empty()) {
      const StateId q = stack.back();
      stack.pop_back();
      for (StateId t : m.epsilon[q])
        if (!reach[p][t]) {
          reach[p][t] = true;
          stack.push_back(t);
        }
    }
  }
  return reach;
}

std::vector<StateId> closure(const Reach& reach, const std::vector<StateId>& set) {
  std::vector<bool> in(reach.size());
  for (StateId p : set)
    for (StateId q = 0; q < reach.size(); ++q)
      if (reach[p][q]) in[q] = true;
  std::vector<StateId> out;
  for (StateId q = 0; q < reach.size(); ++q)
    if (in[q]) out.push_back(q);
  return out;
}

std::vector<StateId> step(const GroupAutomaton& m, const Reach& reach,
                          const std::vector<StateId>& set, SignedLetter x) {
  std::vector<StateId> next;
  for (StateId p : set)
    for (const auto& e : m.edges[p])
      if (e.label == x) next.push_back(e.to);
  return closure(reach, next);
}

bool hasFinal(const GroupAutomaton& m, const std::vector<StateId>& set) {
  return std::any_of(set.begin(), set.end(), [&](StateId q) { return m.finals.contains(q); });
}

std::vector<StateId> initialSet(const GroupAutomaton& m, const Reach& reach) {
  return closure(reach, std::vector<StateId>(m.initials.begin(), m.initials.end()));
}

// Copies b into a with state offset; returns the offset.
StateId append(GroupAutomaton& a, const GroupAutomaton& b) {
  const auto offset = StateId(a.states);
  for (StateId p = 0; p < b.states; ++p) a.addState();
  for (StateId p = 0; p < b.states; ++p) {
    for (const auto& e : b.edges[p]) a.addEdge(offset + p, e.label, offset + e.to);
    for (StateId t : b.epsilon[p]) a.addEpsilon(offset + p, offset + t);
  }
  return offset;
}

}  // namespace

GroupAutomaton benoisSaturate(const GroupAutomaton& m) {
  GroupAutomaton out = m;
  out.inverseMode = false;
  Reach reach = epsilonReach(out);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId p = 0; p < out.states; ++p)
      for (std::size_t i = 0; i < out.edges[p].size(); ++i) {
        const auto e = out.edges[p][i];
        for (StateId r = 0; r < out.states; ++r) {
          if (!reach[e.to][r]) continue;
          for (const auto& f : out.edges[r]) {
            if (f.label != e.label.inverted() || reach[p][f.to]) continue;
            out.addEpsilon(p, f.to);
            // Everything reaching p now reaches everything reachable from f.to.
            for (StateId s = 0; s < out.states; ++s)
              if (reach[s][p])
                for (StateId t = 0; t < out.states; ++t)
                  if (reach[f.to][t]) reach[s][t] = true;
            changed = true;
          }
        }
      }
  }
  out.saturated = true;
  return out;
}

bool rationalMembership(const GroupAutomaton& m, const GroupWord& w) {
  const GroupAutomaton sat = m.saturated ? m : benoisSaturate(m);
  const Reach reach = epsilonReach(sat);
  std::vector<StateId> cur = initialSet(sat, reach);
  for (const auto& x : w.letters()) {
    cur = step(sat, reach, cur, x);
    if (cur.empty()) return false;
  }
  return hasFinal(sat, cur);
}

GroupAutomaton unite(const GroupAutomaton& a, const GroupAutomaton& b) {
  GroupAutomaton out;
  append(out, a);
  const StateId off = append(out, b);
  out.initials = a.initials;
  out.finals = a.finals;
  for (StateId q : b.initials) out.initials.insert(off + q);
  for (StateId q : b.finals) out.finals.insert(off + q);
  out.saturated = a.saturated && b.saturated;
  return out;
}

GroupAutomaton concat(const GroupAutomaton& a, const GroupAutomaton& b) {
  GroupAutomaton out;
  append(out, a);
  const StateId off = append(out, b);
  out.initials = a.initials;
  for (StateId f : a.finals)
    for (StateId i : b.initials) out.addEpsilon(f, off + i);
  for (StateId q : b.finals) out.finals.insert(off + q);
  return out;
}

GroupAutomaton star(const GroupAutomaton& m) {
  GroupAutomaton out;
  const StateId hub = out.addState();
  const StateId off = append(out, m);
  for (StateId i : m.initials) out.addEpsilon(hub, off + i);
  for (StateId f : m.finals) out.addEpsilon(off + f, hub);
  out.initials = {hub};
  out.finals = {hub};
  return out;
}

GroupAutomaton invert(const GroupAutomaton& m) {
  GroupAutomaton out;
  for (StateId p = 0; p < m.states; ++p) out.addState();
  for (StateId p = 0; p < m.states; ++p) {
    for (const auto& e : m.edges[p]) out.addEdge(e.to, e.label.inverted(), p);
    for (StateId t : m.epsilon[p]) out.addEpsilon(t, p);
  }
  out.initials = m.finals;
  out.finals = m.initials;
  out.saturated = m.saturated;
  out.inverseMode = m.inverseMode;
  return out;
}

GroupAutomaton generatedSubgroup(const GroupAutomaton& m) {
  return benoisSaturate(star(unite(m, invert(m))));
}

std::optional<GroupWord> rationalIntersectionNonempty(const GroupAutomaton& a,
                                                      const GroupAutomaton& b) {
  const GroupAutomaton sa = a.saturated ? a : benoisSaturate(a);
  const GroupAutomaton sb = b.saturated ? b : benoisSaturate(b);
  const Reach ra = epsilonReach(sa), rb = epsilonReach(sb);
  std::set<char> letters = sa.letters();
  for (char c : sb.letters()) letters.insert(c);
  const auto alphabet = signedAlphabet(letters);

  // Node: (subset of a, subset of b, index of the last letter or -1).
  using Node = std::tuple<std::vector<StateId>, std::vector<StateId>, int>;
  std::map<Node, std::size_t> index;
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, int>> parent;  // (node, letter)
  auto word = [&](std::size_t n) {
    std::vector<SignedLetter> raw;
    for (; parent[n].second >= 0; n = parent[n].first) raw.push_back(alphabet[parent[n].second]);
    std::reverse(raw.begin(), raw.end());
    return GroupWord::reduce(raw);
  };

  Node start{initialSet(sa, ra), initialSet(sb, rb), -1};
  if (std::get<0>(start).empty() || std::get<1>(start).empty()) return std::nullopt;
  index[start] = 0;
  nodes.push_back(start);
  parent.push_back({0, -1});
  if (hasFinal(sa, std::get<0>(start)) && hasFinal(sb, std::get<1>(start))) return GroupWord{};

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int x = 0; x < int(alphabet.size()); ++x) {
      const int last = std::get<2>(nodes[i]);
      if (last >= 0 && alphabet[x] == alphabet[last].inverted()) continue;
      auto na = step(sa, ra, std::get<0>(nodes[i]), alphabet[x]);
      if (na.empty()) continue;
      auto nb = step(sb, rb, std::get<1>(nodes[i]), alphabet[x]);
      if (nb.empty()) continue;
      Node next{std::move(na), std::move(nb), x};
      if (index.contains(next)) continue;
      index[next] = nodes.size();
      nodes.push_back(next);
      parent.push_back({i, x});
      if (hasFinal(sa, std::get<0>(next)) && hasFinal(sb, std::get<1>(next)))
        return word(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

std::vector<SignedLetter> signedAlphabet(const std::set<char>& letters) {
  std::vector<SignedLetter> out;
  for (char c : letters) {
    out.push_back({c, false});
    out.push_back({c, true});
  }
  return out;
}

bool ReducedDfa::accepts(const GroupWord& w) const {
  State q = table.initial;
  for (const auto& x : w.letters()) {
    auto it = std::find(alphabet.begin(), alphabet.end(), x);
    if (it == alphabet.end()) return false;
    q = table.delta[q][std::size_t(it - alphabet.begin())];
  }
  return table.finals[q];
}

ReducedDfa reducedDfa(const GroupAutomaton& m, const std::set<char>& letters) {
  const GroupAutomaton sat = m.saturated ? m : benoisSaturate(m);
  const Reach reach = epsilonReach(sat);
  std::set<char> all = letters;
  for (char c : sat.letters()) all.insert(c);

  ReducedDfa out;
  out.alphabet = signedAlphabet(all);
  const std::size_t k = out.alphabet.size();

  // State 0 is the sink; others are (subset, last letter).
  using Node = std::pair<std::vector<StateId>, int>;
  std::map<Node, State> ids;
  std::vector<Node> nodes{{{}, -1}};
  TransitionTable t;
  t.delta.emplace_back(k, 0);
  t.finals.push_back(false);
  auto intern = [&](Node n) -> State {
    if (n.first.empty()) return 0;
    auto [it, fresh] = ids.emplace(n, State(nodes.size()));
    if (fresh) {
      t.finals.push_back(hasFinal(sat, n.first));
      nodes.push_back(std::move(n));
      t.delta.emplace_back(k, 0);
    }
    return it->second;
  };
  t.initial = intern({initialSet(sat, reach), -1});
  for (std::size_t i = 1; i < nodes.size(); ++i)
    for (std::size_t x = 0; x < k; ++x) {
      const int last = nodes[i].second;
      if (last >= 0 && out.alphabet[x] == out.alphabet[last].inverted()) continue;
      const State target = intern({step(sat, reach, nodes[i].first, out.alphabet[x]), int(x)});
      t.delta[i][x] = target;
    }
  out.table = minimize(t);
  return out;
}

GroupAutomaton normalize(const GroupAutomaton& m) {
  const ReducedDfa d = reducedDfa(m, m.letters());
  const auto& t = d.table;
  const std::size_t n = t.delta.size();
  std::vector<bool> live(n);
  for (State q = 0; q < n; ++q) live[q] = t.finals[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q)
      if (!live[q])
        for (State r : t.delta[q])
          if (live[r]) {
            live[q] = changed = true;
            break;
          }
  }
  if (!live[t.initial]) return emptySet();

  GroupAutomaton out;
  std::vector<StateId> number(n, 0);
  for (State q = 0; q < n; ++q)
    if (live[q]) number[q] = out.addState();
  for (State q = 0; q < n; ++q) {
    if (!live[q]) continue;
    for (std::size_t x = 0; x < d.alphabet.size(); ++x)
      if (live[t.delta[q][x]]) out.addEdge(number[q], d.alphabet[x], number[t.delta[q][x]]);
    if (t.finals[q]) out.finals.insert(number[q]);
  }
  out.initials = {number[t.initial]};
  out.saturated = true;
  return out;
}

GroupAutomaton intersect(const GroupAutomaton& a, const GroupAutomaton& b) {
  std::set<char> letters = a.letters();
  for (char c : b.letters()) letters.insert(c);
  const ReducedDfa da = reducedDfa(a, letters), db = reducedDfa(b, letters);
  const std::size_t k = da.alphabet.size();

  GroupAutomaton product;
  std::map<std::pair<State, State>, StateId> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, StateId(pairs.size()));
    if (fresh) {
      pairs.push_back({p, q});
      product.addState();
    }
    return it->second;
  };
  product.initials = {intern(da.table.initial, db.table.initial)};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    if (da.table.finals[p] && db.table.finals[q]) product.finals.insert(StateId(i));
    for (std::size_t x = 0; x < k; ++x)
      product.addEdge(StateId(i), da.alphabet[x],
                      intern(da.table.delta[p][x], db.table.delta[q][x]));
  }
  // Both factors only accept reduced words, so no cancellation can reach a
  // final state; normalizing trims the dead part.
  product.saturated = true;
  return normalize(product);
}

Regex toRegex(const GroupAutomaton& m) {
  const ReducedDfa d = reducedDfa(m, m.letters());
  std::vector<Regex> letters;
  for (const auto& x : d.alphabet) letters.push_back(Regex::letter(x.letter, x.inverse));
  return dfaToRegex(d.table, letters);
}

bool sameSubset(const GroupAutomaton& a, const GroupAutomaton& b) {
  std::set<char> letters = a.letters();
  for (char c : b.letters()) letters.insert(c);
  return reducedDfa(a, letters) == reducedDfa(b, letters);
}

}  // namespace profinite
