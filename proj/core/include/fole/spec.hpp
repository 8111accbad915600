#ifndef FOLE_SPEC_HPP
#define FOLE_SPEC_HPP

// Abstract and formal specifications, satisfaction reports, the abstract
// table passage and specification morphisms.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fole/structure.hpp"

namespace fole {

// A generating arrow p: source -> target between predicates, carrying
// h: sig(source) -> sig(target).
struct AbstractConstraint {
  std::string name;
  std::string source;
  std::string target;
  SignatureMorphism h;

  bool operator==(const AbstractConstraint&) const = default;
};

// Constraint names composed left to right; empty means an identity.
using Path = std::vector<std::string>;

struct Equation {
  Path lhs;
  Path rhs;

  bool operator==(const Equation&) const = default;
};

// A finite generating graph over a schema plus declared path equations.
// The free category it presents is never materialised.
struct AbstractSpec {
  Schema schema;
  std::vector<AbstractConstraint> constraints;
  std::vector<Equation> equations;

  const AbstractConstraint& constraint(const std::string& name) const;  // throws UnknownConstraint
  bool has_constraint(const std::string& name) const;

  bool operator==(const AbstractSpec&) const = default;
};

// Endpoints of a path; an empty path sits at `at`. Throws UnknownConstraint,
// PathMismatch.
std::pair<std::string, std::string> path_ends(const AbstractSpec& t, const Path& p,
                                              const std::string& at);

// Composite signature morphism of a path.
SignatureMorphism path_morphism(const AbstractSpec& t, const Path& p, const std::string& at);

std::string to_string(const Path& p);

// Constraint typing (SignatureMismatch, SortMismatch), unique names, and
// for every equation equal endpoints and equal composite morphisms
// (FunctorialityViolation).
Verdict validate_spec(const AbstractSpec& t, const TypeDomain& td);

struct FormalSpec {
  std::vector<Constraint> constraints;
};

// Atoms as formulas; each constraint's morphism is named after it.
FormalSpec companion_formal(const AbstractSpec& t);

struct SpecReport {
  std::vector<std::pair<std::string, ConstraintVerdict>> items;

  bool satisfied() const;
};

SpecReport satisfies_spec(const LaxStructure& m, const FormalSpec& t);
SpecReport satisfies_spec(const LaxStructure& m, const AbstractSpec& t);

// The tuple function R(target) -> R(source) induced by h.
struct RelationMorphism {
  SignatureMorphism h;
  Relation source;  // over h.source
  Relation target;  // over h.target
  std::map<Tuple, Tuple> map;

  bool operator==(const RelationMorphism&) const = default;
};

// With *this: A <- B and next: B <- C, the composite A <- C.
RelationMorphism compose(const RelationMorphism& first, const RelationMorphism& next);
RelationMorphism identity_relation_morphism(const Relation& r);

// The same arrow between relation-included tables.
TableMorphism as_table_morphism(const RelationMorphism& m);

struct TablePassage {
  std::map<std::string, Relation> objects;
  std::map<std::string, RelationMorphism> arrows;
};

// The image of a path under the passage; an empty path is the identity at `at`.
RelationMorphism passage_along(const TablePassage& tp, const AbstractSpec& t, const Path& p,
                               const std::string& at);

// The interpretation functor when M satisfies t, otherwise the first
// refutation in constraint order.
std::variant<TablePassage, Refutation> abstract_table_passage(const LaxStructure& m,
                                                              const AbstractSpec& t);

// <R, f, phi> from T2 to T1: predicates and generating constraints map to
// predicates and paths of T1.
struct SpecMorphism {
  std::map<std::string, std::string> predicate_map;
  std::map<std::string, Path> constraint_map;
  std::map<Sort, Sort> sort_map;
  std::map<std::string, SignatureMorphism> bridge;

  static SpecMorphism identity(const AbstractSpec& t);

  // (*this: T3 -> T2).then(next: T2 -> T1) : T3 -> T1.
  SpecMorphism then(const SpecMorphism& next) const;

  bool operator==(const SpecMorphism&) const = default;
};

// NaturalityViolation(p2) unless h2 then phi(r2) equals phi(r2') then h1.
Verdict validate_spec_morphism(const SpecMorphism& m, const AbstractSpec& t2,
                               const AbstractSpec& t1);

}  // namespace fole

#endif
