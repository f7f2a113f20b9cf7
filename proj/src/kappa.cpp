#include "profinite/kappa.hpp"

#include <cctype>

#include "profinite/error.hpp"

namespace profinite {

KappaTerm KappaTerm::var(std::string name) {
  return KappaTerm(std::make_shared<Node>(Node{Kind::Var, std::move(name)}));
}

KappaTerm KappaTerm::mul(KappaTerm a, KappaTerm b) {
  return KappaTerm(std::make_shared<Node>(Node{Kind::Mul, {}, 0,
                                               std::make_shared<KappaTerm>(std::move(a)),
                                               std::make_shared<KappaTerm>(std::move(b))}));
}

KappaTerm KappaTerm::omegaPow(KappaTerm base, long offset) {
  return KappaTerm(std::make_shared<Node>(
      Node{Kind::OmegaPow, {}, offset, std::make_shared<KappaTerm>(std::move(base)), nullptr}));
}

std::set<std::string> KappaTerm::variables() const {
  switch (kind()) {
    case Kind::Var:
      return {name()};
    case Kind::Mul: {
      auto v = left().variables();
      auto r = right().variables();
      v.insert(r.begin(), r.end());
      return v;
    }
    case Kind::OmegaPow:
      return left().variables();
  }
  return {};
}

bool KappaTerm::isPrimitive() const {
  switch (kind()) {
    case Kind::Var:
      return true;
    case Kind::Mul:
      return left().isPrimitive() && right().isPrimitive();
    case Kind::OmegaPow:
      return offset() == -1 && left().isPrimitive();
  }
  return false;
}

std::string KappaTerm::toString() const {
  switch (kind()) {
    case Kind::Var:
      return name();
    case Kind::Mul:
      return left().toString() + right().toString();
    case Kind::OmegaPow: {
      std::string base = left().kind() == Kind::Var ? left().toString()
                                                    : "(" + left().toString() + ")";
      if (offset() == 0) return base + "^w";
      return base + "^(w" + (offset() > 0 ? "+" : "-") + std::to_string(std::labs(offset())) +
             ")";
    }
  }
  return {};
}

KappaTerm expandToPrimitive(const KappaTerm& t) {
  using K = KappaTerm::Kind;
  switch (t.kind()) {
    case K::Var:
      return t;
    case K::Mul:
      return KappaTerm::mul(expandToPrimitive(t.left()), expandToPrimitive(t.right()));
    case K::OmegaPow: {
      const KappaTerm base = expandToPrimitive(t.left());
      const KappaTerm inv = KappaTerm::omegaPow(base, -1);
      const long q = t.offset();
      if (q < 0) {
        KappaTerm acc = inv;
        for (long i = 1; i < -q; ++i) acc = KappaTerm::mul(acc, inv);
        return acc;
      }
      KappaTerm acc = KappaTerm::mul(inv, base);
      for (long i = 0; i < q; ++i) acc = KappaTerm::mul(acc, base);
      return acc;
    }
  }
  return t;
}

Element evalTerm(const KappaTerm& t, const FiniteSemigroup& s, const Assignment& assignment) {
  using K = KappaTerm::Kind;
  switch (t.kind()) {
    case K::Var: {
      auto it = assignment.find(t.name());
      if (it == assignment.end()) throw NotFound("unbound variable '" + t.name() + "'");
      if (it->second >= s.order())
        throw DomainError("variable '" + t.name() + "' assigned an out-of-range element");
      return it->second;
    }
    case K::Mul:
      return s.mul(evalTerm(t.left(), s, assignment), evalTerm(t.right(), s, assignment));
    case K::OmegaPow:
      return omegaPower(s, evalTerm(t.left(), s, assignment), t.offset());
  }
  return 0;
}

// ---------------------------------------------------------------------------

Pseudoidentity::Pseudoidentity(KappaTerm l, KappaTerm r) : lhs(std::move(l)), rhs(std::move(r)) {
  auto vars = lhs.variables();
  auto more = rhs.variables();
  vars.insert(more.begin(), more.end());
  variables.assign(vars.begin(), vars.end());
}

std::string Pseudoidentity::toString() const { return lhs.toString() + " = " + rhs.toString(); }

Satisfaction satisfies(const FiniteSemigroup& s, const Pseudoidentity& pid) {
  const std::size_t k = pid.variables.size();
  std::vector<Element> values(k, 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) a[pid.variables[i]] = values[i];
    if (evalTerm(pid.lhs, s, a) != evalTerm(pid.rhs, s, a)) return {false, std::move(a)};
    // Odometer with the last variable least significant.
    std::size_t i = k;
    while (i > 0 && ++values[i - 1] == s.order()) values[--i] = 0;
    if (i == 0) break;
  }
  return {};
}

Membership member(const FiniteSemigroup& s, const PseudovarietyDef& v) {
  for (std::size_t i = 0; i < v.basis.size(); ++i) {
    auto sat = satisfies(s, v.basis[i]);
    if (!sat.holds) return {false, i, std::move(sat.witness)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  std::vector<KappaTerm> parseChain() {
    std::vector<KappaTerm> terms{parseProduct()};
    while (peek() == '=') {
      ++pos_;
      terms.push_back(parseProduct());
    }
    expectEnd();
    return terms;
  }

  KappaTerm parseSingle() {
    KappaTerm t = parseProduct();
    expectEnd();
    return t;
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expectEnd() {
    if (peek() != '\0') throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= text_.size())
        throw SyntaxError(std::string("expected '") + c + "' but input ended", pos_);
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  long parseNumber() {
    peek();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      v = v * 10 + (text_[pos_++] - '0');
    if (pos_ == start) throw SyntaxError("expected a number", pos_);
    return v;
  }

  bool startsFactor() {
    const char c = peek();
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  KappaTerm parseProduct() {
    KappaTerm t = parseFactor();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        t = KappaTerm::mul(t, parseFactor());
      } else if (startsFactor()) {
        t = KappaTerm::mul(t, parseFactor());
      } else {
        return t;
      }
    }
  }

  KappaTerm parseFactor() {
    KappaTerm t = parseAtom();
    while (peek() == '^') {
      ++pos_;
      const char c = peek();
      if (c == 'w') {
        ++pos_;
        t = KappaTerm::omegaPow(t, 0);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t at = pos_;
        const long n = parseNumber();
        if (n < 1) throw SyntaxError("power must be at least 1", at);
        KappaTerm base = t;
        for (long i = 1; i < n; ++i) t = KappaTerm::mul(t, base);
      } else if (c == '(') {
        ++pos_;
        if (peek() != 'w') throw SyntaxError("expected 'w' in omega exponent", pos_);
        ++pos_;
        long offset = 0;
        const char sign = peek();
        if (sign == '+' || sign == '-') {
          ++pos_;
          offset = parseNumber();
          if (sign == '-') offset = -offset;
        }
        expect(')');
        t = KappaTerm::omegaPow(t, offset);
      } else {
        throw SyntaxError("expected an exponent", pos_);
      }
    }
    return t;
  }

  KappaTerm parseAtom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      KappaTerm t = parseProduct();
      expect(')');
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      return KappaTerm::var(std::string{c});
    }
    if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

PseudovarietyDef def(std::string name, std::string_view identities,
                     std::optional<std::string> check, bool experimental = false) {
  return {std::move(name), parsePseudoidentities(identities), std::move(check), experimental};
}

std::map<std::string, PseudovarietyDef> builtins(bool experimental) {
  std::map<std::string, PseudovarietyDef> r;
  auto add = [&](PseudovarietyDef d) { r.emplace(d.name, std::move(d)); };
  add({"S", {}, std::nullopt});
  add(def("I", "x = y", std::nullopt));
  add(def("A", "x^(w+1) = x^w", "isAperiodic"));
  add({"G",
       {parsePseudoidentities("x^w y = y").front(), parsePseudoidentities("y x^w = y").front()},
       "isGroup"});
  add(def("J", "(xy)^w x = (xy)^w = y(xy)^w", "isJTrivial"));
  add({"Sl",
       {parsePseudoidentities("x^2 = x").front(), parsePseudoidentities("xy = yx").front()},
       "isSemilattice"});
  add(def("N", "x^w y = x^w = y x^w", "isNilpotent"));
  add(def("CR", "x^(w+1) = x", "isCompletelyRegular"));
  if (experimental) {
    add({"LSl",
         {parsePseudoidentities("(x^w y x^w)^2 = x^w y x^w").front(),
          parsePseudoidentities("x^w y x^w z x^w = x^w z x^w y x^w").front()},
         std::nullopt,
         true});
  }
  return r;
}

}  // namespace

KappaTerm parseTerm(std::string_view text) { return TermParser(text).parseSingle(); }

std::vector<Pseudoidentity> parsePseudoidentities(std::string_view text) {
  auto terms = TermParser(text).parseChain();
  if (terms.size() < 2) throw SyntaxError("expected '='", text.size());
  std::vector<Pseudoidentity> out;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) out.emplace_back(terms[i], terms[i + 1]);
  return out;
}

const std::map<std::string, PseudovarietyDef>& registry(bool includeExperimental) {
  static const auto standard = builtins(false);
  static const auto extended = builtins(true);
  return includeExperimental ? extended : standard;
}

const PseudovarietyDef& lookupPseudovariety(const std::string& name, bool includeExperimental) {
  const auto& r = registry(includeExperimental);
  auto it = r.find(name);
  if (it == r.end()) throw NotFound("unknown pseudovariety '" + name + "'");
  return it->second;
}

}  // namespace profinite
