#pragma once

// Finite automata over a letter alphabet: Thompson construction, subset
// construction, Moore minimization, and the transition semigroup.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/regex.hpp"
#include "profinite/semigroup.hpp"

namespace profinite {

using State = std::uint32_t;

// Nondeterministic automaton with optional epsilon moves. Letters are given
// by their index in `alphabet`.
struct Nfa {
  Alphabet alphabet;
  std::size_t states = 0;
  std::vector<std::vector<std::pair<std::size_t, State>>> edges;  // (letter, target)
  std::vector<std::vector<State>> epsilon;
  std::vector<State> initials;
  std::vector<bool> finals;

  State addState();
  void addEdge(State from, std::size_t letter, State to);
  void addEpsilon(State from, State to);
};

// Complete deterministic automaton.
struct Dfa {
  Alphabet alphabet;
  std::vector<std::vector<State>> delta;  // delta[state][letter]
  State initial = 0;
  std::vector<bool> finals;

  std::size_t size() const { return delta.size(); }
  State run(State from, std::string_view word) const;  // throws on foreign letter
  bool accepts(std::string_view word) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

Nfa thompson(const Regex& r, const Alphabet& alphabet);

// Subset construction restricted to reachable subsets, completed with the
// empty subset as sink when needed.
Dfa determinize(const Nfa& nfa);

// Removes unreachable states, merges equivalent ones and renumbers states in
// breadth-first order from the initial state, so equal languages give equal
// Dfa values.
Dfa minimize(const Dfa& dfa);

// The same procedure on a bare transition table, for automata whose letters
// are not characters.
struct TransitionTable {
  std::vector<std::vector<State>> delta;
  State initial = 0;
  std::vector<bool> finals;

  friend bool operator==(const TransitionTable&, const TransitionTable&) = default;
};
TransitionTable minimize(const TransitionTable& table);

Dfa toMinimalDfa(const Regex& r, const Alphabet& alphabet);

// State elimination: an expression for the language of `dfa`.
Regex dfaToRegex(const Dfa& dfa);
// Same, with letter i written as letters[i].
Regex dfaToRegex(const TransitionTable& dfa, const std::vector<Regex>& letters);

// The semigroup of transformations induced by nonempty words, composed left
// to right (the word uv acts as u, then v). When `adjoinIdentity` is set the
// identity transformation is included as the image of the empty word.
struct TransitionSemigroup {
  FiniteSemigroup semigroup;
  std::vector<Element> letterImage;  // indexed like the alphabet
  std::vector<std::vector<State>> transformations;
  std::vector<std::string> representatives;  // a shortest word per element
  std::optional<Element> emptyWordImage;
};

TransitionSemigroup transitionSemigroup(const Dfa& dfa, bool adjoinIdentity);

}  // namespace profinite
