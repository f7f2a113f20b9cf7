#include "profinite/syntactic.hpp"

#include "profinite/error.hpp"

namespace profinite {

Element Morphism::image(std::string_view word) const {
  if (word.empty()) throw DomainError("semigroup morphisms are not defined on the empty word");
  std::optional<Element> acc;
  for (char c : word) {
    const auto pos = alphabet.find(c);
    if (pos == std::string::npos)
      throw DomainError(std::string("letter '") + c + "' is not in the alphabet");
    const Element x = letterImage[pos];
    acc = acc ? codomain.mul(*acc, x) : x;
  }
  return *acc;
}

SyntacticResult syntacticSemigroup(const Regex& r, const Alphabet& alphabet) {
  Dfa dfa = toMinimalDfa(r, alphabet);
  const bool withEmpty = dfa.finals[dfa.initial];
  TransitionSemigroup ts = transitionSemigroup(dfa, withEmpty);

  SyntacticResult out{Morphism{alphabet, ts.semigroup, ts.letterImage}, {}, withEmpty,
                      ts.emptyWordImage, std::move(dfa)};
  for (Element x = 0; x < ts.transformations.size(); ++x)
    if (out.minimalDfa.finals[ts.transformations[x][out.minimalDfa.initial]])
      out.accepting.insert(x);
  return out;
}

bool recognizes(const Morphism& m, const ElementSet& accept, std::string_view w) {
  return accept.contains(m.image(w));
}

}  // namespace profinite
