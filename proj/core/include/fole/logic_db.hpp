#ifndef FOLE_LOGIC_DB_HPP
#define FOLE_LOGIC_DB_HPP

// Sound logics and databases, their morphisms, the passages between the two
// forms and the image reflection.

#include <map>
#include <string>
#include <vector>

#include "fole/spec.hpp"

namespace fole {

// A lax structure together with a specification it satisfies.
struct SoundLogic {
  LaxStructure structure;
  AbstractSpec spec;

  bool operator==(const SoundLogic&) const = default;
};

// Structure and spec validity, equal schemas (SchemaMismatch) and
// satisfaction (Unsatisfied naming constraint and tuple).
Verdict validate_sound_logic(const SoundLogic& l);

// Validates and throws on failure.
SoundLogic make_sound_logic(LaxStructure m, AbstractSpec t);

// Tables over one type domain indexed by the schema's predicates, with a
// table morphism per generating constraint p: T(source) <- T(target).
struct Database {
  AbstractSpec schema;
  TypeDomain type_domain;
  std::map<std::string, Table> tables;
  std::map<std::string, TableMorphism> constraint_maps;

  const Table& table(const std::string& predicate) const;  // throws UnknownPredicate
  bool operator==(const Database&) const = default;
};

// Composite of constraint table morphisms along a path; empty is the
// identity at `at`.
TableMorphism db_along(const Database& db, const Path& p, const std::string& at);

// Tables, constraint morphisms (NaturalityViolation names constraint and
// key) and declared equations (FunctorialityViolation).
Verdict validate_database(const Database& db);

struct DbProjection {
  std::map<std::string, Signature> signatures;         // S on objects
  std::map<std::string, SignatureMorphism> sig_arrows;  // S on constraints
  std::map<std::string, std::vector<Key>> key_sets;     // K on objects
  std::map<std::string, std::map<Key, Key>> key_arrows; // K on constraints
  std::map<std::string, std::map<Key, Tuple>> tuples;   // tuple bridge components
};

DbProjection db_project(const Database& db);

Database snd_to_db(const SoundLogic& l);

// Throws InternalSatisfactionFailure if the re-check fails.
SoundLogic db_to_snd(const Database& db);

Database db_image(const Database& db);

// <R, f, g, phi, kappa>: the schema part is a spec morphism whose sort map
// must agree with the type-domain morphism; key_bridge[r2] sends keys of
// db1's table for R(r2) to keys of db2's table for r2.
struct DatabaseMorphism {
  SpecMorphism schema_map;
  TypeDomainMorphism type_map;
  std::map<std::string, std::map<Key, Key>> key_bridge;

  static DatabaseMorphism identity(const Database& db);
  DatabaseMorphism then(const DatabaseMorphism& next) const;

  bool operator==(const DatabaseMorphism&) const = default;
};

// Component validators, SortMapMismatch, the pointwise key condition
// (KeyBridgeViolation) and the per-constraint naturality square
// (NaturalitySquareViolation).
Verdict validate_db_morphism(const DatabaseMorphism& m, const Database& db2,
                             const Database& db1);

struct SoundLogicMorphism {
  SpecMorphism spec_map;
  LaxStructureMorphism structure_map;

  static SoundLogicMorphism identity(const SoundLogic& l);
  SoundLogicMorphism then(const SoundLogicMorphism& next) const;

  bool operator==(const SoundLogicMorphism&) const = default;
};

// Both parts validate and share the schema morphism (SchemaMorphismMismatch).
Verdict validate_sound_logic_morphism(const SoundLogicMorphism& m, const SoundLogic& l2,
                                      const SoundLogic& l1);

// Moves a key bridge onto the image tables: tuple_key(t1) goes to
// tuple_key(g . tuple_along(phi, t1)).
std::map<std::string, std::map<Key, Key>> transport_key_bridge(
    const std::map<std::string, std::string>& predicate_map,
    const std::map<std::string, SignatureMorphism>& bridge, const TypeDomainMorphism& type_map,
    const std::map<std::string, Table>& tables1, const std::vector<std::string>& predicates2);

// Between snd_to_db(l2) and snd_to_db(l1). Throws on invalid input.
DatabaseMorphism snd_mor_to_db_mor(const SoundLogicMorphism& m, const SoundLogic& l2,
                                   const SoundLogic& l1);

// Between db_to_snd(db2) and db_to_snd(db1). Throws on invalid input.
SoundLogicMorphism db_mor_to_snd_mor(const DatabaseMorphism& m, const Database& db2,
                                     const Database& db1);

}  // namespace fole

#endif
