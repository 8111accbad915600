#ifndef FOLE_STRUCTURE_HPP
#define FOLE_STRUCTURE_HPP

// Structures in strict and lax form, formula interpretation, satisfaction of
// sequents and constraints, and structure morphisms.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fole/formula.hpp"
#include "fole/tables.hpp"

namespace fole {

// A global key set classified by predicates, with one tuple per key.
struct StrictStructure {
  Schema schema;
  TypeDomain type_domain;
  std::vector<Key> keys;
  std::map<Key, std::set<std::string>> classifies;  // k -> {r | k |= r}
  std::map<Key, Tuple> tuple_of;

  bool operator==(const StrictStructure&) const = default;
};

// DefiningConditionViolation(k, r) when a classified key's tuple is not
// well-sorted over the predicate's signature.
Verdict validate_strict(const StrictStructure& m);

// One table per predicate. This is the form all interpretation runs on.
struct LaxStructure {
  Schema schema;
  TypeDomain type_domain;
  std::map<std::string, Table> tables;

  const Table& table(const std::string& predicate) const;  // throws UnknownPredicate
  bool operator==(const LaxStructure&) const = default;
};

// Schema sorts, one table per predicate with matching signature, well-sorted
// tuples.
Verdict validate_lax(const LaxStructure& m);

LaxStructure to_lax(const StrictStructure& m);

Relation interpret_relation(const LaxStructure& m, const Formula& f);

// Atoms keep their stored keys, exists/subst go through table_sigma and
// table_substitution, everything else is relation-included.
Table interpret_table(const LaxStructure& m, const Formula& f);

bool satisfies_sequent(const LaxStructure& m, const Sequent& q);

struct ConstraintWitness {
  Table source;  // T(phi'), over h.source
  Table target;  // T(phi), over h.target
  TableMorphism morphism;
};

struct Refutation {
  std::string constraint;
  Tuple tuple;  // a tuple of R(phi) whose h-image misses R(phi')
};

using ConstraintVerdict = std::variant<ConstraintWitness, Refutation>;

// Decides exists_h R(phi) <= R(phi') and R(phi) <= h^-1 R(phi') and throws
// GaloisDisagreement if they differ. The witness key map sends each target
// key to the first source key (in key order) carrying the required tuple;
// the refutation names the first offending tuple in enumeration order.
ConstraintVerdict satisfies_constraint(const LaxStructure& m, const Constraint& c);

bool intent_contains(const LaxStructure& m, const Constraint& c);

// <r, phi, f, g, kappa> from M2 to M1. bridge[r2] : sum_along(f, sig2(r2))
// -> sig1(r(r2)); key_bridge[r2] sends keys of M1's table for r(r2) to keys
// of M2's table for r2.
struct LaxStructureMorphism {
  std::map<std::string, std::string> predicate_map;
  std::map<std::string, SignatureMorphism> bridge;
  TypeDomainMorphism type_map;
  std::map<std::string, std::map<Key, Key>> key_bridge;

  static LaxStructureMorphism identity(const LaxStructure& m);

  // (*this: M3 -> M2).then(next: M2 -> M1) : M3 -> M1.
  LaxStructureMorphism then(const LaxStructureMorphism& next) const;

  bool operator==(const LaxStructureMorphism&) const = default;
};

// Shape checks shared by every morphism that carries a predicate map and a
// schema bridge: the type-domain infomorphism, totality of the predicate
// map, and bridge signatures.
Verdict check_schema_part(const std::map<std::string, std::string>& predicate_map,
                          const std::map<std::string, SignatureMorphism>& bridge,
                          const TypeDomainMorphism& type_map, const Schema& s2,
                          const TypeDomain& a2, const Schema& s1, const TypeDomain& a1);

// KeyBridgeViolation(r2, k1) unless tau2(kappa(k1)) = g . tuple_along(phi, tau1(k1)).
Verdict validate_lax_morphism(const LaxStructureMorphism& m, const LaxStructure& m2,
                              const LaxStructure& m1);

// The table morphism from the dextro flow of M2's r2 table to M1's r(r2)
// table, keyed k1 -> (kappa(k1), tuple_along(phi, tau1(k1))).
TableMorphism tabular_bridge(const LaxStructureMorphism& m, const std::string& r2,
                             const LaxStructure& m1);

// <r, k, phi, f, g> with a global key function k: K1 -> K2. The universe
// bridge is not stored; its components are recovered from phi.
struct StrictStructureMorphism {
  std::map<std::string, std::string> predicate_map;
  std::map<std::string, SignatureMorphism> bridge;
  TypeDomainMorphism type_map;
  std::map<Key, Key> key_map;

  bool operator==(const StrictStructureMorphism&) const = default;
};

// EntityInfomorphismViolation(r2, k1) unless k(k1) |= r2 iff k1 |= r(r2).
Verdict check_entity_infomorphism(const StrictStructureMorphism& m,
                                  const StrictStructure& m2, const StrictStructure& m1);

// Schema part, type-domain infomorphism, entity infomorphism and the
// universe bridge (UniverseBridgeViolation when tau2(k(k1)) is not the
// g-image of tau1(k1) reindexed along phi).
Verdict validate_strict_morphism(const StrictStructureMorphism& m, const StrictStructure& m2,
                                 const StrictStructure& m1);

// Throws EntityInfomorphismViolation (or the schema/type-domain errors);
// kappa is k restricted to each extent.
LaxStructureMorphism strict_morphism_to_lax(const StrictStructureMorphism& m,
                                            const StrictStructure& m2,
                                            const StrictStructure& m1);

}  // namespace fole

#endif
