#include "fole/structure.hpp"

#include <algorithm>

namespace fole {

// ---------------------------------------------------------------------------
// Strict and lax structures

Verdict validate_strict(const StrictStructure& m) {
  if (auto v = m.schema.validate(m.type_domain); !v) return v;
  std::set<Key> keys;
  for (const auto& k : m.keys)
    if (!keys.insert(k).second) return Verdict::fail("DuplicateKey", k);
  for (const auto& [k, preds] : m.classifies) {
    if (!keys.count(k)) return Verdict::fail("UnknownKey", k);
    for (const auto& r : preds) {
      if (!m.schema.has(r)) return Verdict::fail("UnknownPredicate", r);
      auto t = m.tuple_of.find(k);
      if (t == m.tuple_of.end() || !well_sorted(t->second, m.schema.signature(r), m.type_domain))
        return Verdict::fail("DefiningConditionViolation",
                             "(" + k + ", " + r + "): " +
                                 (t == m.tuple_of.end() ? std::string("no tuple")
                                                        : format_tuple(t->second)) +
                                 " not over " + to_string(m.schema.signature(r)));
    }
  }
  for (const auto& [k, t] : m.tuple_of)
    if (!keys.count(k)) return Verdict::fail("UnknownKey", k);
  return Verdict::ok();
}

const Table& LaxStructure::table(const std::string& predicate) const {
  auto it = tables.find(predicate);
  if (it == tables.end()) throw Error("UnknownPredicate", predicate);
  return it->second;
}

Verdict validate_lax(const LaxStructure& m) {
  if (auto v = m.schema.validate(m.type_domain); !v) return v;
  for (const auto& [r, t] : m.tables)
    if (!m.schema.has(r)) return Verdict::fail("UnknownPredicate", r + " has a table but no signature");
  for (const auto& r : m.schema.predicates()) {
    auto it = m.tables.find(r);
    if (it == m.tables.end()) return Verdict::fail("MissingTable", r);
    if (it->second.signature() != m.schema.signature(r))
      return Verdict::fail("SignatureMismatch", r + ": table " +
                                                    to_string(it->second.signature()) + " vs " +
                                                    to_string(m.schema.signature(r)));
    if (auto v = validate_table(it->second, m.type_domain); !v)
      return Verdict::fail(v.code(), r + ": " + v.detail());
  }
  return Verdict::ok();
}

LaxStructure to_lax(const StrictStructure& m) {
  LaxStructure out{m.schema, m.type_domain, {}};
  for (const auto& r : m.schema.predicates()) out.tables.emplace(r, Table(m.schema.signature(r)));
  for (const auto& k : m.keys) {
    auto c = m.classifies.find(k);
    if (c == m.classifies.end()) continue;
    for (const auto& r : c->second) out.tables.at(r).insert(k, m.tuple_of.at(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interpretation

namespace {

BoolOp bool_op(FormulaKind k) {
  switch (k) {
    case FormulaKind::Meet: return BoolOp::Meet;
    case FormulaKind::Join: return BoolOp::Join;
    case FormulaKind::Negation: return BoolOp::Negation;
    case FormulaKind::Implication: return BoolOp::Implication;
    case FormulaKind::Difference: return BoolOp::Difference;
    case FormulaKind::Top: return BoolOp::Top;
    default: return BoolOp::Bottom;
  }
}

Relation interpret(const LaxStructure& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return table_image(m.table(f.name()));
    case FormulaKind::Top:
    case FormulaKind::Bottom: return fiber_boolean(bool_op(f.kind()), {}, f.signature(), m.type_domain);
    case FormulaKind::Exists:
      return fiber_flow(Flow::Exists, f.morphism(), interpret(m, f.child(0)), m.type_domain);
    case FormulaKind::Forall:
      return fiber_flow(Flow::Forall, f.morphism(), interpret(m, f.child(0)), m.type_domain);
    case FormulaKind::Subst:
      return fiber_flow(Flow::Preimage, f.morphism(), interpret(m, f.child(0)), m.type_domain);
    default: {
      std::vector<Relation> operands;
      for (const auto& c : f.children()) operands.push_back(interpret(m, c));
      Signature sig = operands.front().signature;
      return fiber_boolean(bool_op(f.kind()), operands, sig, m.type_domain);
    }
  }
}

Table interpret_tbl(const LaxStructure& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return m.table(f.name());
    case FormulaKind::Exists: return table_sigma(f.morphism(), interpret_tbl(m, f.child(0)));
    case FormulaKind::Subst:
      return table_substitution(f.morphism(), interpret_tbl(m, f.child(0)), m.type_domain);
    default: return relation_include(interpret(m, f));
  }
}

}  // namespace

Relation interpret_relation(const LaxStructure& m, const Formula& f) {
  infer_signature(f, m.schema);
  return interpret(m, f);
}

Table interpret_table(const LaxStructure& m, const Formula& f) {
  infer_signature(f, m.schema);
  return interpret_tbl(m, f);
}

bool satisfies_sequent(const LaxStructure& m, const Sequent& q) {
  check_sequent(q, m.schema).raise();
  return subset_of(interpret(m, q.lhs), interpret(m, q.rhs));
}

ConstraintVerdict satisfies_constraint(const LaxStructure& m, const Constraint& c) {
  check_constraint(c, m.schema).raise();
  Relation source = interpret(m, c.source);
  Relation target = interpret(m, c.target);

  bool by_image = subset_of(fiber_flow(Flow::Exists, c.h, target, m.type_domain), source);
  bool by_preimage = subset_of(target, fiber_flow(Flow::Preimage, c.h, source, m.type_domain));
  if (by_image != by_preimage)
    throw Error("GaloisDisagreement", c.name);

  if (!by_image) {
    for (const auto& t : in_enumeration_order(target, m.type_domain))
      if (!source.contains(tuple_along(c.h, t))) return Refutation{c.name, t};
  }

  ConstraintWitness w{interpret_tbl(m, c.source), interpret_tbl(m, c.target),
                      TableMorphism{c.h, {}}};
  std::map<Tuple, Key> first_key;
  for (const auto& k : w.source.keys()) first_key.emplace(w.source.tuple_of(k), k);
  for (const auto& k : w.target.keys())
    w.morphism.key_map[k] = first_key.at(tuple_along(c.h, w.target.tuple_of(k)));
  return w;
}

bool intent_contains(const LaxStructure& m, const Constraint& c) {
  return std::holds_alternative<ConstraintWitness>(satisfies_constraint(m, c));
}

// ---------------------------------------------------------------------------
// Lax morphisms

LaxStructureMorphism LaxStructureMorphism::identity(const LaxStructure& m) {
  LaxStructureMorphism out;
  out.type_map = TypeDomainMorphism::identity(m.type_domain);
  for (const auto& r : m.schema.predicates()) {
    out.predicate_map[r] = r;
    out.bridge.emplace(r, SignatureMorphism::identity(m.schema.signature(r)));
    auto& kappa = out.key_bridge[r];
    for (const auto& k : m.table(r).keys()) kappa[k] = k;
  }
  return out;
}

LaxStructureMorphism LaxStructureMorphism::then(const LaxStructureMorphism& next) const {
  LaxStructureMorphism out;
  out.type_map = type_map.then(next.type_map);
  for (const auto& [r3, r2] : predicate_map) {
    const std::string& r1 = next.predicate_map.at(r2);
    out.predicate_map[r3] = r1;

    const auto& inner = bridge.at(r3);
    const auto& outer = next.bridge.at(r2);
    std::vector<Attribute> attrs;
    for (const auto& a : inner.source().attributes())
      attrs.push_back({a.name, next.type_map.sort(a.sort)});
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < inner.map().size(); ++i) map.push_back(outer(inner(i)));
    out.bridge.emplace(r3, SignatureMorphism(Signature(attrs), outer.target(), map));

    const auto& kappa_inner = key_bridge.at(r3);
    auto& kappa = out.key_bridge[r3];
    for (const auto& [k1, k2] : next.key_bridge.at(r2)) kappa[k1] = kappa_inner.at(k2);
  }
  return out;
}

Verdict check_schema_part(const std::map<std::string, std::string>& predicate_map,
                          const std::map<std::string, SignatureMorphism>& bridge,
                          const TypeDomainMorphism& type_map, const Schema& s2,
                          const TypeDomain& a2, const Schema& s1, const TypeDomain& a1) {
  if (auto v = check_type_domain_morphism(type_map, a2, a1); !v) return v;
  for (const auto& r2 : s2.predicates()) {
    auto it = predicate_map.find(r2);
    if (it == predicate_map.end()) return Verdict::fail("UnmappedPredicate", r2);
    if (!s1.has(it->second))
      return Verdict::fail("UnknownPredicate", it->second + " (image of " + r2 + ")");
    auto b = bridge.find(r2);
    if (b == bridge.end()) return Verdict::fail("MissingBridge", r2);
    Signature want_src = sum_along(type_map, s2.signature(r2));
    if (b->second.source() != want_src || b->second.target() != s1.signature(it->second))
      return Verdict::fail("SignatureMismatch",
                           r2 + ": bridge " + to_string(b->second.source()) + " -> " +
                               to_string(b->second.target()) + ", expected " +
                               to_string(want_src) + " -> " +
                               to_string(s1.signature(it->second)));
    if (auto v = check_signature_morphism(b->second); !v)
      return Verdict::fail(v.code(), r2 + ": " + v.detail());
  }
  return Verdict::ok();
}

Verdict validate_lax_morphism(const LaxStructureMorphism& m, const LaxStructure& m2,
                              const LaxStructure& m1) {
  if (auto v = check_schema_part(m.predicate_map, m.bridge, m.type_map, m2.schema,
                                 m2.type_domain, m1.schema, m1.type_domain);
      !v)
    return v;
  for (const auto& r2 : m2.schema.predicates()) {
    const Table& t2 = m2.table(r2);
    const Table& t1 = m1.table(m.predicate_map.at(r2));
    const auto& phi = m.bridge.at(r2);
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
                             "(" + r2 + ", " + k1 + "): " + it->second + " -> " +
                                 format_tuple(t2.tuple_of(it->second)) + " != " +
                                 format_tuple(want));
    }
  }
  return Verdict::ok();
}

TableMorphism tabular_bridge(const LaxStructureMorphism& m, const std::string& r2,
                             const LaxStructure& m1) {
  const Table& t1 = m1.table(m.predicate_map.at(r2));
  const auto& phi = m.bridge.at(r2);
  TableMorphism out{phi, {}};
  for (const auto& k1 : t1.keys())
    out.key_map[k1] = pair_key(m.key_bridge.at(r2).at(k1), tuple_along(phi, t1.tuple_of(k1)));
  return out;
}

// ---------------------------------------------------------------------------
// Strict morphisms

Verdict check_entity_infomorphism(const StrictStructureMorphism& m,
                                  const StrictStructure& m2, const StrictStructure& m1) {
  std::set<Key> keys2(m2.keys.begin(), m2.keys.end());
  for (const auto& k1 : m1.keys) {
    auto it = m.key_map.find(k1);
    if (it == m.key_map.end()) return Verdict::fail("UnmappedKey", k1);
    if (!keys2.count(it->second)) return Verdict::fail("UnknownKey", it->second);
  }
  auto holds = [](const StrictStructure& s, const Key& k, const std::string& r) {
    auto c = s.classifies.find(k);
    return c != s.classifies.end() && c->second.count(r) != 0;
  };
  for (const auto& r2 : m2.schema.predicates()) {
    auto r = m.predicate_map.find(r2);
    if (r == m.predicate_map.end()) return Verdict::fail("UnmappedPredicate", r2);
    for (const auto& k1 : m1.keys) {
      bool lhs = holds(m2, m.key_map.at(k1), r2);
      bool rhs = holds(m1, k1, r->second);
      if (lhs != rhs)
        return Verdict::fail("EntityInfomorphismViolation",
                             "(" + r2 + ", " + k1 + "): k(" + k1 + ")=" + m.key_map.at(k1) +
                                 (lhs ? " |= " : " not|= ") + r2 + " but " + k1 +
                                 (rhs ? " |= " : " not|= ") + r->second);
    }
  }
  return Verdict::ok();
}

Verdict validate_strict_morphism(const StrictStructureMorphism& m, const StrictStructure& m2,
                                 const StrictStructure& m1) {
  if (auto v = check_schema_part(m.predicate_map, m.bridge, m.type_map, m2.schema,
                                 m2.type_domain, m1.schema, m1.type_domain);
      !v)
    return v;
  if (auto v = check_entity_infomorphism(m, m2, m1); !v) return v;
  for (const auto& r2 : m2.schema.predicates()) {
    const std::string& r1 = m.predicate_map.at(r2);
    const auto& phi = m.bridge.at(r2);
    for (const auto& k1 : m1.keys) {
      auto c = m1.classifies.find(k1);
      if (c == m1.classifies.end() || !c->second.count(r1)) continue;
      const Key& k2 = m.key_map.at(k1);
      Tuple want = map_values(m.type_map, tuple_along(phi, m1.tuple_of.at(k1)));
      if (m2.tuple_of.at(k2) != want)
        return Verdict::fail("UniverseBridgeViolation",
                             "(" + r2 + ", " + k1 + "): " + format_tuple(m2.tuple_of.at(k2)) +
                                 " != " + format_tuple(want));
    }
  }
  return Verdict::ok();
}

LaxStructureMorphism strict_morphism_to_lax(const StrictStructureMorphism& m,
                                            const StrictStructure& m2,
                                            const StrictStructure& m1) {
  check_schema_part(m.predicate_map, m.bridge, m.type_map, m2.schema, m2.type_domain,
                    m1.schema, m1.type_domain)
      .raise();
  check_entity_infomorphism(m, m2, m1).raise();
  LaxStructureMorphism out{m.predicate_map, m.bridge, m.type_map, {}};
  for (const auto& r2 : m2.schema.predicates()) {
    const std::string& r1 = m.predicate_map.at(r2);
    auto& kappa = out.key_bridge[r2];
    for (const auto& k1 : m1.keys) {
      auto c = m1.classifies.find(k1);
      if (c != m1.classifies.end() && c->second.count(r1)) kappa[k1] = m.key_map.at(k1);
    }
  }
  return out;
}

}  // namespace fole
