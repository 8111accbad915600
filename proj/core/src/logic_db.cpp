#include "fole/logic_db.hpp"

namespace fole {

namespace {

Verdict sort_maps_agree(const SpecMorphism& s, const TypeDomainMorphism& t) {
  for (const auto& [x2, x1] : s.sort_map) {
    auto it = t.sort_map.find(x2);
    if (it == t.sort_map.end() || it->second != x1)
      return Verdict::fail("SortMapMismatch",
                           x2 + ": schema says " + x1 + ", type domain says " +
                               (it == t.sort_map.end() ? std::string("nothing") : it->second));
  }
  return Verdict::ok();
}

}  // namespace

// ---------------------------------------------------------------------------
// Sound logics

Verdict validate_sound_logic(const SoundLogic& l) {
  if (auto v = validate_lax(l.structure); !v) return v;
  if (!(l.structure.schema == l.spec.schema))
    return Verdict::fail("SchemaMismatch", "structure and specification schemas differ");
  if (auto v = validate_spec(l.spec, l.structure.type_domain); !v) return v;
  for (const auto& [name, v] : satisfies_spec(l.structure, l.spec).items)
    if (auto* r = std::get_if<Refutation>(&v))
      return Verdict::fail("Unsatisfied", name + " at " + format_tuple(r->tuple));
  return Verdict::ok();
}

SoundLogic make_sound_logic(LaxStructure m, AbstractSpec t) {
  SoundLogic l{std::move(m), std::move(t)};
  validate_sound_logic(l).raise();
  return l;
}

// ---------------------------------------------------------------------------
// Databases

const Table& Database::table(const std::string& predicate) const {
  auto it = tables.find(predicate);
  if (it == tables.end()) throw Error("UnknownPredicate", predicate);
  return it->second;
}

TableMorphism db_along(const Database& db, const Path& p, const std::string& at) {
  auto [start, end] = path_ends(db.schema, p, at);
  TableMorphism out = TableMorphism::identity(db.table(start));
  for (const auto& name : p) out = out.then(db.constraint_maps.at(name));
  return out;
}

Verdict validate_database(const Database& db) {
  if (auto v = validate_spec(db.schema, db.type_domain); !v) return v;
  const Schema& schema = db.schema.schema;
  for (const auto& [r, t] : db.tables)
    if (!schema.has(r)) return Verdict::fail("UnknownPredicate", r + " has a table but no signature");
  for (const auto& r : schema.predicates()) {
    auto it = db.tables.find(r);
    if (it == db.tables.end()) return Verdict::fail("MissingTable", r);
    if (it->second.signature() != schema.signature(r))
      return Verdict::fail("SignatureMismatch", r + ": table " +
                                                    to_string(it->second.signature()) + " vs " +
                                                    to_string(schema.signature(r)));
    if (auto v = validate_table(it->second, db.type_domain); !v)
      return Verdict::fail(v.code(), r + ": " + v.detail());
  }
  for (const auto& [p, m] : db.constraint_maps)
    if (!db.schema.has_constraint(p)) return Verdict::fail("UnknownConstraint", p);
  for (const auto& c : db.schema.constraints) {
    auto it = db.constraint_maps.find(c.name);
    if (it == db.constraint_maps.end()) return Verdict::fail("MissingConstraintMorphism", c.name);
    if (it->second.h != c.h)
      return Verdict::fail("SignatureMismatch", c.name + ": morphism " + to_string(it->second.h) +
                                                    " vs " + to_string(c.h));
    auto v = check_table_morphism(it->second, db.table(c.source), db.table(c.target));
    if (!v) return Verdict::fail(v.code(), c.name + ": " + v.detail());
  }
  for (const auto& eq : db.schema.equations) {
    std::string at = !eq.lhs.empty() ? db.schema.constraint(eq.lhs.front()).source
                     : !eq.rhs.empty() ? db.schema.constraint(eq.rhs.front()).source
                                       : std::string();
    if (at.empty()) continue;
    TableMorphism l = db_along(db, eq.lhs, at);
    TableMorphism r = db_along(db, eq.rhs, at);
    auto [start, end] = path_ends(db.schema, eq.lhs, at);
    const Table& first = db.table(start);
    const Table& last = db.table(end);
    // Exact after taking images; the key choice may differ.
    for (const auto& k : last.keys())
      if (first.tuple_of(l.key_map.at(k)) != first.tuple_of(r.key_map.at(k)))
        return Verdict::fail("FunctorialityViolation",
                             to_string(eq.lhs) + " = " + to_string(eq.rhs) + " at key " + k);
  }
  return Verdict::ok();
}

DbProjection db_project(const Database& db) {
  DbProjection out;
  for (const auto& r : db.schema.schema.predicates()) {
    const Table& t = db.table(r);
    out.signatures.emplace(r, t.signature());
    out.key_sets[r] = t.keys();
    auto& tau = out.tuples[r];
    for (const auto& k : t.keys()) tau[k] = t.tuple_of(k);
  }
  for (const auto& c : db.schema.constraints) {
    const auto& m = db.constraint_maps.at(c.name);
    out.sig_arrows.emplace(c.name, m.h);
    out.key_arrows[c.name] = m.key_map;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Passages

Database snd_to_db(const SoundLogic& l) {
  auto passage = abstract_table_passage(l.structure, l.spec);
  if (auto* r = std::get_if<Refutation>(&passage))
    throw Error("Unsatisfied", r->constraint + " at " + format_tuple(r->tuple));
  const auto& tp = std::get<TablePassage>(passage);
  Database db{l.spec, l.structure.type_domain, {}, {}};
  for (const auto& [r, rel] : tp.objects) db.tables.emplace(r, relation_include(rel));
  for (const auto& [p, arrow] : tp.arrows) db.constraint_maps.emplace(p, as_table_morphism(arrow));
  return db;
}

SoundLogic db_to_snd(const Database& db) {
  SoundLogic l{LaxStructure{db.schema.schema, db.type_domain, db.tables}, db.schema};
  if (auto v = validate_sound_logic(l); !v)
    throw Error("InternalSatisfactionFailure", v.code() + ": " + v.detail());
  return l;
}

Database db_image(const Database& db) {
  Database out{db.schema, db.type_domain, {}, {}};
  for (const auto& [r, t] : db.tables) out.tables.emplace(r, relation_include(table_image(t)));
  for (const auto& c : db.schema.constraints) {
    TableMorphism m{c.h, {}};
    for (const auto& t : table_image(db.table(c.target)).tuples)
      m.key_map[tuple_key(t)] = tuple_key(tuple_along(c.h, t));
    out.constraint_maps.emplace(c.name, std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

DatabaseMorphism DatabaseMorphism::identity(const Database& db) {
  DatabaseMorphism out{SpecMorphism::identity(db.schema),
                       TypeDomainMorphism::identity(db.type_domain), {}};
  for (const auto& r : db.schema.schema.predicates()) {
    auto& kappa = out.key_bridge[r];
    for (const auto& k : db.table(r).keys()) kappa[k] = k;
  }
  return out;
}

DatabaseMorphism DatabaseMorphism::then(const DatabaseMorphism& next) const {
  DatabaseMorphism out{schema_map.then(next.schema_map), type_map.then(next.type_map), {}};
  for (const auto& [r3, r2] : schema_map.predicate_map) {
    const auto& inner = key_bridge.at(r3);
    auto& kappa = out.key_bridge[r3];
    for (const auto& [k1, k2] : next.key_bridge.at(r2)) kappa[k1] = inner.at(k2);
  }
  return out;
}

Verdict validate_db_morphism(const DatabaseMorphism& m, const Database& db2,
                             const Database& db1) {
  if (auto v = validate_spec_morphism(m.schema_map, db2.schema, db1.schema); !v) return v;
  if (auto v = sort_maps_agree(m.schema_map, m.type_map); !v) return v;
  const auto& pm = m.schema_map.predicate_map;
  if (auto v = check_schema_part(pm, m.schema_map.bridge, m.type_map, db2.schema.schema,
                                 db2.type_domain, db1.schema.schema, db1.type_domain);
      !v)
    return v;

  for (const auto& r2 : db2.schema.schema.predicates()) {
    const Table& t2 = db2.table(r2);
    const Table& t1 = db1.table(pm.at(r2));
    const auto& phi = m.schema_map.bridge.at(r2);
    auto kb = m.key_bridge.find(r2);
    if (kb == m.key_bridge.end()) return Verdict::fail("MissingKeyBridge", r2);
    for (const auto& k1 : t1.keys()) {
      auto it = kb->second.find(k1);
      if (it == kb->second.end()) return Verdict::fail("UnmappedKey", "(" + r2 + ", " + k1 + ")");
      if (!t2.has_key(it->second))
        return Verdict::fail("UnknownKey", "(" + r2 + ", " + k1 + "): " + it->second);
      Tuple want = map_values(m.type_map, tuple_along(phi, t1.tuple_of(k1)));
      if (t2.tuple_of(it->second) != want)
        return Verdict::fail("KeyBridgeViolation",
                             "(" + r2 + ", " + k1 + "): " + format_tuple(t2.tuple_of(it->second)) +
                                 " != " + format_tuple(want));
    }
  }

  // For p2: r2' -> r2 and its image path p1, both routes K1(R r2) -> K2(r2')
  // must land on keys with the same tuple.
  for (const auto& p2 : db2.schema.constraints) {
    const auto& kp2 = db2.constraint_maps.at(p2.name).key_map;
    TableMorphism p1 = db_along(db1, m.schema_map.constraint_map.at(p2.name), pm.at(p2.source));
    const auto& kappa_src = m.key_bridge.at(p2.source);
    const auto& kappa_tgt = m.key_bridge.at(p2.target);
    const Table& end2 = db2.table(p2.source);
    for (const auto& k1 : db1.table(pm.at(p2.target)).keys()) {
      const Key& a = kp2.at(kappa_tgt.at(k1));
      const Key& b = kappa_src.at(p1.key_map.at(k1));
      if (end2.tuple_of(a) != end2.tuple_of(b))
        return Verdict::fail("NaturalitySquareViolation",
                             p2.name + " at " + k1 + ": " + format_tuple(end2.tuple_of(a)) +
                                 " != " + format_tuple(end2.tuple_of(b)));
    }
  }
  return Verdict::ok();
}

SoundLogicMorphism SoundLogicMorphism::identity(const SoundLogic& l) {
  return {SpecMorphism::identity(l.spec), LaxStructureMorphism::identity(l.structure)};
}

SoundLogicMorphism SoundLogicMorphism::then(const SoundLogicMorphism& next) const {
  return {spec_map.then(next.spec_map), structure_map.then(next.structure_map)};
}

Verdict validate_sound_logic_morphism(const SoundLogicMorphism& m, const SoundLogic& l2,
                                      const SoundLogic& l1) {
  if (auto v = validate_lax_morphism(m.structure_map, l2.structure, l1.structure); !v) return v;
  if (auto v = validate_spec_morphism(m.spec_map, l2.spec, l1.spec); !v) return v;
  if (m.structure_map.predicate_map != m.spec_map.predicate_map)
    return Verdict::fail("SchemaMorphismMismatch", "predicate maps differ");
  if (m.structure_map.bridge != m.spec_map.bridge)
    return Verdict::fail("SchemaMorphismMismatch", "schema bridges differ");
  if (auto v = sort_maps_agree(m.spec_map, m.structure_map.type_map); !v)
    return Verdict::fail("SchemaMorphismMismatch", v.detail());
  return Verdict::ok();
}

std::map<std::string, std::map<Key, Key>> transport_key_bridge(
    const std::map<std::string, std::string>& predicate_map,
    const std::map<std::string, SignatureMorphism>& bridge, const TypeDomainMorphism& type_map,
    const std::map<std::string, Table>& tables1, const std::vector<std::string>& predicates2) {
  std::map<std::string, std::map<Key, Key>> out;
  for (const auto& r2 : predicates2) {
    const auto& phi = bridge.at(r2);
    auto& kappa = out[r2];
    for (const auto& t1 : table_image(tables1.at(predicate_map.at(r2))).tuples)
      kappa[tuple_key(t1)] = tuple_key(map_values(type_map, tuple_along(phi, t1)));
  }
  return out;
}

DatabaseMorphism snd_mor_to_db_mor(const SoundLogicMorphism& m, const SoundLogic& l2,
                                   const SoundLogic& l1) {
  validate_sound_logic_morphism(m, l2, l1).raise();
  const auto& s = m.structure_map;
  return {m.spec_map, s.type_map,
          transport_key_bridge(s.predicate_map, s.bridge, s.type_map, l1.structure.tables,
                               l2.spec.schema.predicates())};
}

SoundLogicMorphism db_mor_to_snd_mor(const DatabaseMorphism& m, const Database& db2,
                                     const Database& db1) {
  validate_db_morphism(m, db2, db1).raise();
  LaxStructureMorphism s{m.schema_map.predicate_map, m.schema_map.bridge, m.type_map,
                         m.key_bridge};
  return {m.schema_map, std::move(s)};
}

}  // namespace fole
