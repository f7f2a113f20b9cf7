#pragma once

// Terms over the signature of multiplication and x -> x^{omega-1}, their
// evaluation in finite semigroups, pseudoidentities and pseudovariety
// membership through finite bases.
//
// Text syntax: variables are single letters; `*` or juxtaposition multiplies;
// `t^w`, `t^(w+q)`, `t^(w-q)` are omega powers with offset; `t^n` (n >= 1) is
// an ordinary power; a pseudoidentity is `lhs = rhs`, and `a = b = c` is read
// as the two identities a = b and b = c.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/semigroup.hpp"

namespace profinite {

using Assignment = std::map<std::string, Element>;

class KappaTerm {
 public:
  enum class Kind { Var, Mul, OmegaPow };

  static KappaTerm var(std::string name);
  static KappaTerm mul(KappaTerm a, KappaTerm b);
  // base^{omega + offset}
  static KappaTerm omegaPow(KappaTerm base, long offset = 0);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  long offset() const { return node_->offset; }
  const KappaTerm& left() const { return *node_->left; }  // also the base of OmegaPow
  const KappaTerm& right() const { return *node_->right; }

  std::set<std::string> variables() const;
  std::string toString() const;

  // True when every OmegaPow node has offset -1.
  bool isPrimitive() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    long offset = 0;
    std::shared_ptr<const KappaTerm> left{}, right{};
  };
  explicit KappaTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Rewrites every omega power into the primitive signature:
//   t^w = t^{w-1} t,  t^{w+q} = t^w t^q (q > 0),  t^{w-q} = (t^{w-1})^q (q > 0).
KappaTerm expandToPrimitive(const KappaTerm& t);

// Throws NotFound for an unbound variable.
Element evalTerm(const KappaTerm& t, const FiniteSemigroup& s, const Assignment& assignment);

struct Pseudoidentity {
  KappaTerm lhs, rhs;
  std::vector<std::string> variables;  // sorted

  Pseudoidentity(KappaTerm l, KappaTerm r);
  std::string toString() const;
};

struct Satisfaction {
  bool holds = true;
  std::optional<Assignment> witness;
};

// Exhaustive over all |S|^|variables| assignments, in lexicographic order
// with the first variable most significant.
Satisfaction satisfies(const FiniteSemigroup& s, const Pseudoidentity& pid);

struct PseudovarietyDef {
  std::string name;
  std::vector<Pseudoidentity> basis;
  std::optional<std::string> structuralCheck;  // a predicate name from structuralPredicates
  bool experimental = false;
};

struct Membership {
  bool member = true;
  std::optional<std::size_t> failedIdentity;  // index into the basis
  std::optional<Assignment> witness;
};

Membership member(const FiniteSemigroup& s, const PseudovarietyDef& v);

// Built-in pseudovarieties S, I, A, G, J, Sl, N, CR; LSl only when
// experimental definitions are requested.
const std::map<std::string, PseudovarietyDef>& registry(bool includeExperimental = false);
const PseudovarietyDef& lookupPseudovariety(const std::string& name,
                                            bool includeExperimental = false);

KappaTerm parseTerm(std::string_view text);
std::vector<Pseudoidentity> parsePseudoidentities(std::string_view text);

}  // namespace profinite
