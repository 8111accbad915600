#ifndef FOLE_FORMULA_HPP
#define FOLE_FORMULA_HPP

// Formula syntax: schemas, the formula AST, the DSL parser and printer,
// signature inference, sequents, constraints and the enfolding maps.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fole/core.hpp"

namespace fole {

class Schema {
 public:
  // Throws DuplicatePredicate.
  void add(const std::string& predicate, Signature sig);

  const std::vector<std::string>& predicates() const noexcept { return predicates_; }
  bool has(const std::string& predicate) const { return sigs_.count(predicate) != 0; }
  const Signature& signature(const std::string& predicate) const;  // throws UnknownPredicate

  // UnknownSort when a signature mentions a sort missing from td.
  Verdict validate(const TypeDomain& td) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<std::string> predicates_;
  std::map<std::string, Signature> sigs_;
};

// Named signatures and signature morphisms that formulas may refer to.
struct FormulaEnv {
  std::map<std::string, Signature> signatures;
  std::map<std::string, SignatureMorphism> morphisms;
};

enum class FormulaKind {
  Atom, Meet, Join, Negation, Implication, Difference, Top, Bottom, Exists, Forall, Subst
};

// Immutable formula tree; copies share structure.
//
// Top and Bottom carry the signature name they were written with plus the
// resolved signature; flow nodes carry the morphism name plus the resolved
// morphism. Equality is structural.
class Formula {
 public:
  static Formula atom(std::string predicate);
  static Formula top(std::string sig_name, Signature sig);
  static Formula bottom(std::string sig_name, Signature sig);
  static Formula meet(Formula a, Formula b);
  static Formula join(Formula a, Formula b);
  static Formula negation(Formula a);
  static Formula implication(Formula a, Formula b);
  static Formula difference(Formula a, Formula b);
  static Formula exists(std::string h_name, SignatureMorphism h, Formula a);
  static Formula forall(std::string h_name, SignatureMorphism h, Formula a);
  static Formula subst(std::string h_name, SignatureMorphism h, Formula a);

  FormulaKind kind() const noexcept { return node_->kind; }
  // Predicate, signature or morphism name depending on kind.
  const std::string& name() const noexcept { return node_->name; }
  const Signature& signature() const noexcept { return node_->sig; }
  const SignatureMorphism& morphism() const noexcept { return node_->h; }
  const std::vector<Formula>& children() const noexcept { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string name;
    Signature sig;
    SignatureMorphism h;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

// Throws ParseError ("offset N: ..."), UnknownPredicate, UnknownMorphism,
// UnknownSignature.
Formula parse_formula(const std::string& text, const Schema& schema, const FormulaEnv& env);

// Canonical text: every binary connective parenthesised.
std::string print_formula(const Formula& f);

// Throws FiberMismatch, FlowMismatch, SortMismatch, UnknownPredicate.
Signature infer_signature(const Formula& f, const Schema& schema);

struct Sequent {
  Formula lhs;
  Formula rhs;
};

Verdict check_sequent(const Sequent& q, const Schema& schema);
Formula enfold_sequent(const Sequent& q);

// phi' --h--> phi: h runs from the signature of source (phi') to the
// signature of target (phi).
struct Constraint {
  std::string name;
  Formula source;
  Formula target;
  std::string h_name;
  SignatureMorphism h;
};

Verdict check_constraint(const Constraint& c, const Schema& schema);

// `constraint NAME : FORMULA -[MORPHISM]-> FORMULA`
Constraint parse_constraint(const std::string& text, const Schema& schema,
                            const FormulaEnv& env);
std::string print_constraint(const Constraint& c);

enum class Side { Source, Target };

// Source: (exists[h] phi => phi'); Target: (phi => subst[h] phi').
Formula enfold_constraint(const Constraint& c, Side side);

}  // namespace fole

#endif
