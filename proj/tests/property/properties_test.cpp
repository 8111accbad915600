#include <gtest/gtest.h>

#include <sstream>

#include "fole/cli/commands.hpp"
#include "gen.hpp"
#include "oracle.hpp"

namespace fole {
namespace {

using testing::Gen;

constexpr int kCases = 500;

// Runs body on kCases generators seeded from the run seed and a per-property
// salt; the seed of a failing case is attached to its messages.
template <class F>
void for_cases(std::uint64_t salt, F body) {
  for (int i = 0; i < kCases; ++i) {
    const std::uint64_t seed = testing::base_seed() * 1000003u + salt * 7919u + i;
    SCOPED_TRACE("seed " + std::to_string(seed));
    Gen g(seed);
    body(g);
    if (::testing::Test::HasFailure()) return;
  }
}

std::set<Tuple> as_set(const std::vector<Tuple>& ts) { return {ts.begin(), ts.end()}; }

// A2 may have no sorts when f is not surjective; the empty signature is
// the only one over it.
Signature signature_over(Gen& g, const TypeDomain& td) {
  return td.sorts().empty() ? Signature{} : g.signature(td);
}

Relation top_of(const Signature& sig, const TypeDomain& td) {
  return fiber_boolean(BoolOp::Top, {}, sig, td);
}

// ---------------------------------------------------------------------------
// core

TEST(CoreProperty, EnumerationCardinality) {
  for_cases(1, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature sig = g.signature(td);
    std::size_t expected = 1;
    for (const auto& a : sig.attributes()) expected *= td.extent(a.sort).size();
    auto ts = enumerate_tuples(sig, td);
    EXPECT_EQ(ts.size(), expected);
    EXPECT_EQ(as_set(ts).size(), expected);
    for (const auto& t : ts) EXPECT_TRUE(well_sorted(t, sig, td));
  });
}

TEST(CoreProperty, TupleAlongIsFunctorial) {
  for_cases(2, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature c = g.signature(td);
    SignatureMorphism h2 = g.morphism_into(c);
    SignatureMorphism h1 = g.morphism_into(h2.source());
    for (const auto& t : enumerate_tuples(c, td)) {
      EXPECT_EQ(tuple_along(h1.then(h2), t), tuple_along(h1, tuple_along(h2, t)));
      EXPECT_EQ(tuple_along(SignatureMorphism::identity(c), t), t);
    }
  });
}

TEST(CoreProperty, InfomorphismPostcompositionLandsInExtents) {
  for_cases(3, [](Gen& g) {
    TypeDomain a1 = g.type_domain();
    auto ic = testing::info_case(g, a1, g.chance(0.5));
    ASSERT_TRUE(check_type_domain_morphism(ic.m, ic.a2, a1));
    Signature sig2 = signature_over(g, ic.a2);
    for (const auto& t1 : enumerate_tuples(sum_along(ic.m, sig2), a1))
      EXPECT_TRUE(well_sorted(map_values(ic.m, t1), sig2, ic.a2));
  });
}

// ---------------------------------------------------------------------------
// tables

TEST(TablesProperty, GaloisConnections) {
  for_cases(4, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature b = g.signature(td);
    SignatureMorphism h = g.morphism_into(b);
    Relation r = g.relation(b, td);
    Relation r2 = g.relation(h.source(), td);
    // Half the time aim r2 at the boundary of the first equivalence.
    if (g.chance(0.5)) r2 = fiber_flow(Flow::Exists, h, r, td);
    auto ex = fiber_flow(Flow::Exists, h, r, td);
    auto pre = fiber_flow(Flow::Preimage, h, r2, td);
    auto all = fiber_flow(Flow::Forall, h, r, td);
    EXPECT_EQ(subset_of(ex, r2), subset_of(r, pre));
    EXPECT_EQ(subset_of(pre, r), subset_of(r2, all));
    EXPECT_EQ(ex.tuples, testing::oracle_exists(h, r.tuples, td));
    EXPECT_EQ(all.tuples, testing::oracle_forall(h, r.tuples, td));
    EXPECT_EQ(pre.tuples, testing::oracle_preimage(h, r2.tuples, td));
  });
}

TEST(TablesProperty, Reflection) {
  for_cases(5, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature sig = g.signature(td);
    Relation r = g.relation(sig, td);
    EXPECT_EQ(table_image(relation_include(r)), r);
    Table t = g.table(sig, td);
    bool injective = table_image(t).size() == t.size();
    EXPECT_EQ(key_equivalent(relation_include(table_image(t)), t), injective);
  });
}

TEST(TablesProperty, SigmaIsFunctorialUpToKeys) {
  for_cases(6, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature c = g.signature(td);
    SignatureMorphism h2 = g.morphism_into(c);
    SignatureMorphism h1 = g.morphism_into(h2.source());
    Table t = g.table(c, td);
    Table direct = table_sigma(h1.then(h2), t);
    Table stepwise = table_sigma(h1, table_sigma(h2, t));
    EXPECT_TRUE(key_equivalent(direct, stepwise));
    EXPECT_EQ(table_image(direct), table_image(stepwise));
    EXPECT_TRUE(key_equivalent(table_sigma(SignatureMorphism::identity(c), t), t));
  });
}

TEST(TablesProperty, BooleanAlgebraAxioms) {
  for_cases(7, [](Gen& g) {
    TypeDomain td = g.type_domain();
    Signature s = g.signature(td);
    Relation a = g.relation(s, td), b = g.relation(s, td), c = g.relation(s, td);
    auto op = [&](BoolOp o, std::vector<Relation> xs) { return fiber_boolean(o, xs, s, td); };
    auto meet = [&](const Relation& x, const Relation& y) { return op(BoolOp::Meet, {x, y}); };
    auto join = [&](const Relation& x, const Relation& y) { return op(BoolOp::Join, {x, y}); };
    auto neg = [&](const Relation& x) { return op(BoolOp::Negation, {x}); };
    EXPECT_EQ(meet(a, meet(b, c)), meet(meet(a, b), c));
    EXPECT_EQ(join(a, join(b, c)), join(join(a, b), c));
    EXPECT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
    EXPECT_EQ(join(a, meet(b, c)), meet(join(a, b), join(a, c)));
    EXPECT_EQ(neg(meet(a, b)), join(neg(a), neg(b)));
    EXPECT_EQ(neg(join(a, b)), meet(neg(a), neg(b)));
    EXPECT_EQ(neg(neg(a)), a);
    EXPECT_EQ(join(a, neg(a)), op(BoolOp::Top, {}));
    EXPECT_EQ(meet(a, neg(a)), op(BoolOp::Bottom, {}));
    EXPECT_EQ(op(BoolOp::Implication, {a, b}), join(neg(a), b));
    EXPECT_EQ(op(BoolOp::Difference, {a, b}), meet(a, neg(b)));
  });
}

TEST(TablesProperty, TypeDomainFlowsAgainstOracle) {
  for_cases(8, [](Gen& g) {
    TypeDomain a1 = g.type_domain();
    auto ic = testing::info_case(g, a1, g.chance(0.5));
    Table t2 = g.table(signature_over(g, ic.a2), ic.a2);
    Table d = table_flow_type_domain(Direction::Dextro, ic.m, t2, ic.a2, a1);
    EXPECT_EQ(d.signature(), sum_along(ic.m, t2.signature()));
    EXPECT_EQ(table_image(d).tuples, testing::oracle_dextro_image(ic.m, t2, a1));
    EXPECT_TRUE(validate_table(d, a1));

    Table t1 = g.table(g.signature(a1), a1);
    Table l = table_flow_type_domain(Direction::Levo, ic.m, t1, ic.a2, a1);
    EXPECT_EQ(l.signature(), pull_along(ic.m, t1.signature(), ic.a2));
    EXPECT_EQ(l.keys(), t1.keys());
    EXPECT_TRUE(validate_table(l, ic.a2));
  });
}

// ---------------------------------------------------------------------------
// formula

// Rebuilds f with fresh names for every signature and morphism it carries and
// records them in env, so the printed text can be parsed back.
Formula named(const Formula& f, FormulaEnv& env) {
  const std::string n = std::to_string(env.signatures.size() + env.morphisms.size());
  switch (f.kind()) {
    case FormulaKind::Atom: return f;
    case FormulaKind::Top:
      env.signatures["s" + n] = f.signature();
      return Formula::top("s" + n, f.signature());
    case FormulaKind::Bottom:
      env.signatures["s" + n] = f.signature();
      return Formula::bottom("s" + n, f.signature());
    case FormulaKind::Negation: return Formula::negation(named(f.child(0), env));
    case FormulaKind::Meet: return Formula::meet(named(f.child(0), env), named(f.child(1), env));
    case FormulaKind::Join: return Formula::join(named(f.child(0), env), named(f.child(1), env));
    case FormulaKind::Implication:
      return Formula::implication(named(f.child(0), env), named(f.child(1), env));
    case FormulaKind::Difference:
      return Formula::difference(named(f.child(0), env), named(f.child(1), env));
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::Subst: {
      env.morphisms["h" + n] = f.morphism();
      Formula body = named(f.child(0), env);
      if (f.kind() == FormulaKind::Exists) return Formula::exists("h" + n, f.morphism(), body);
      if (f.kind() == FormulaKind::Forall) return Formula::forall("h" + n, f.morphism(), body);
      return Formula::subst("h" + n, f.morphism(), body);
    }
  }
  return f;
}

TEST(FormulaProperty, PrintParseRoundTripAndInference) {
  for_cases(9, [](Gen& g) {
    TypeDomain td = g.type_domain();
    LaxStructure m = g.structure(g.schema(td), td);
    Signature sig = g.chance(0.5) ? m.schema.signature(g.pick(m.schema.predicates()))
                                  : g.signature(td);
    FormulaEnv env;
    Formula f = named(g.formula(m, sig, testing::kMaxDepth), env);
    Formula back = parse_formula(print_formula(f), m.schema, env);
    EXPECT_EQ(back, f) << print_formula(f);
    EXPECT_EQ(infer_signature(back, m.schema), sig);
    EXPECT_EQ(infer_signature(back, m.schema), infer_signature(f, m.schema));
  });
}

TEST(FormulaProperty, EnfoldingsAreTopIffSatisfied) {
  int satisfied = 0;
  for_cases(10, [&](Gen& g) {
    TypeDomain td = g.type_domain();
    LaxStructure m = g.structure(g.schema(td), td);
    Signature b = m.schema.signature(g.pick(m.schema.predicates()));
    SignatureMorphism h = g.morphism_into(b);
    Formula phi = g.formula(m, b, 2);
    Formula phi2 = g.formula(m, h.source(), 2);
    if (g.chance(0.5)) phi2 = Formula::join(Formula::exists("h", h, phi), phi2);
    Constraint c{"c", phi2, phi, "h", h};
    ASSERT_TRUE(check_constraint(c, m.schema));
    bool sat = std::holds_alternative<ConstraintWitness>(satisfies_constraint(m, c));
    satisfied += sat;
    EXPECT_EQ(sat, intent_contains(m, c));
    for (Side side : {Side::Source, Side::Target}) {
      Formula f = enfold_constraint(c, side);
      EXPECT_EQ(interpret_relation(m, f) == top_of(infer_signature(f, m.schema), td), sat);
    }
  });
  EXPECT_GT(satisfied, kCases / 4);
  EXPECT_LT(satisfied, kCases);
}

// ---------------------------------------------------------------------------
// structure

TEST(StructureProperty, InterpretationMatchesOracleAndFlows) {
  for_cases(11, [](Gen& g) {
    TypeDomain td = g.type_domain();
    LaxStructure m = g.structure(g.schema(td), td);
    Signature sig = g.chance(0.5) ? m.schema.signature(g.pick(m.schema.predicates()))
                                  : g.signature(td);
    Formula f = g.formula(m, sig, testing::kMaxDepth);
    Relation r = interpret_relation(m, f);
    EXPECT_EQ(r.signature, sig);
    EXPECT_EQ(r.tuples, testing::oracle_relation(m, f)) << print_formula(f);
    EXPECT_EQ(table_image(interpret_table(m, f)), r) << print_formula(f);

    auto child = [&](std::size_t i) { return interpret_relation(m, f.child(i)); };
    switch (f.kind()) {
      case FormulaKind::Exists:
        EXPECT_EQ(r, fiber_flow(Flow::Exists, f.morphism(), child(0), td));
        break;
      case FormulaKind::Forall:
        EXPECT_EQ(r, fiber_flow(Flow::Forall, f.morphism(), child(0), td));
        break;
      case FormulaKind::Subst:
        EXPECT_EQ(r, fiber_flow(Flow::Preimage, f.morphism(), child(0), td));
        break;
      case FormulaKind::Meet:
        EXPECT_EQ(r, fiber_boolean(BoolOp::Meet, {child(0), child(1)}, sig, td));
        break;
      case FormulaKind::Join:
        EXPECT_EQ(r, fiber_boolean(BoolOp::Join, {child(0), child(1)}, sig, td));
        break;
      case FormulaKind::Implication:
        EXPECT_EQ(r, fiber_boolean(BoolOp::Implication, {child(0), child(1)}, sig, td));
        break;
      case FormulaKind::Difference:
        EXPECT_EQ(r, fiber_boolean(BoolOp::Difference, {child(0), child(1)}, sig, td));
        break;
      case FormulaKind::Negation:
        EXPECT_EQ(r, fiber_boolean(BoolOp::Negation, {child(0)}, sig, td));
        break;
      default: break;
    }
  });
}

TEST(StructureProperty, IntentIsClosedUnderIdentityAndComposition) {
  for_cases(12, [](Gen& g) {
    TypeDomain td = g.type_domain();
    LaxStructure m = g.structure(g.schema(td), td);
    Signature c = m.schema.signature(g.pick(m.schema.predicates()));
    SignatureMorphism h2 = g.morphism_into(c);
    SignatureMorphism h1 = g.morphism_into(h2.source());
    Formula phi3 = g.formula(m, c, 2);
    Formula phi2 = g.formula(m, h2.source(), 2);
    Formula phi1 = g.formula(m, h1.source(), 2);
    // Widen the sources so both generators lie in the intent.
    phi2 = Formula::join(phi2, Formula::exists("h2", h2, phi3));
    phi1 = Formula::join(phi1, Formula::exists("h1", h1, phi2));
    Constraint c1{"c1", phi1, phi2, "h1", h1};
    Constraint c2{"c2", phi2, phi3, "h2", h2};
    ASSERT_TRUE(intent_contains(m, c1));
    ASSERT_TRUE(intent_contains(m, c2));
    EXPECT_TRUE(intent_contains(m, Constraint{"c12", phi1, phi3, "h12", h1.then(h2)}));
    EXPECT_TRUE(intent_contains(m, Constraint{"id", phi3, phi3, "id", SignatureMorphism::identity(c)}));
  });
}

TEST(StructureProperty, StrictValidImpliesLaxValid) {
  for_cases(13, [](Gen& g) {
    auto sc = testing::strict_morphism(g, g.chance(0.3));
    if (!validate_strict_morphism(sc.m, sc.m2, sc.m1)) return;
    auto lax = strict_morphism_to_lax(sc.m, sc.m2, sc.m1);
    EXPECT_TRUE(validate_lax_morphism(lax, to_lax(sc.m2), to_lax(sc.m1)));
  });
}

// ---------------------------------------------------------------------------
// spec

TEST(SpecProperty, AbstractFormalAndPassageAgree) {
  int satisfied = 0;
  for_cases(14, [&](Gen& g) {
    TypeDomain td = g.type_domain();
    Schema s = g.schema(td);
    LaxStructure m = g.structure(s, td);
    AbstractSpec t = g.spec(s, td);
    ASSERT_TRUE(validate_spec(t, td));
    if (g.chance(0.5)) testing::saturate(m, t);
    bool sat = satisfies_spec(m, t).satisfied();
    satisfied += sat;
    EXPECT_EQ(sat, satisfies_spec(m, companion_formal(t)).satisfied());
    auto passage = abstract_table_passage(m, t);
    ASSERT_EQ(std::holds_alternative<TablePassage>(passage), sat);
    if (!sat) return;
    const auto& tp = std::get<TablePassage>(passage);
    for (const auto& [r, rel] : tp.objects) EXPECT_EQ(rel, table_image(m.table(r)));
    for (const auto& [name, arrow] : tp.arrows)
      EXPECT_TRUE(check_table_morphism(as_table_morphism(arrow), relation_include(arrow.source),
                                       relation_include(arrow.target)))
          << name;
    // Exact functoriality on every composable pair of generators.
    for (const auto& p : t.constraints)
      for (const auto& q : t.constraints) {
        if (p.target != q.source) continue;
        EXPECT_EQ(passage_along(tp, t, {p.name, q.name}, p.source),
                  compose(tp.arrows.at(p.name), tp.arrows.at(q.name)));
      }
    for (const auto& eq : t.equations) {
      const std::string& at = t.constraint(eq.lhs.front()).source;
      EXPECT_EQ(passage_along(tp, t, eq.lhs, at), passage_along(tp, t, eq.rhs, at));
    }
  });
  EXPECT_GT(satisfied, kCases / 4);
}

// ---------------------------------------------------------------------------
// logic_db

bool pointwise_key_equivalent(const Database& a, const Database& b) {
  if (a.tables.size() != b.tables.size()) return false;
  for (const auto& [r, t] : a.tables)
    if (!key_equivalent(t, b.table(r))) return false;
  return true;
}

TEST(LogicDbProperty, ReflectionBothWays) {
  for_cases(15, [](Gen& g) {
    Database db = g.database();
    ASSERT_TRUE(validate_database(db));
    Database back = snd_to_db(db_to_snd(db));
    Database image = db_image(db);
    EXPECT_TRUE(pointwise_key_equivalent(back, image));
    EXPECT_EQ(back.constraint_maps, image.constraint_maps);
    EXPECT_EQ(db_image(image), image);

    SoundLogic l = g.sound_logic();
    SoundLogic again = db_to_snd(snd_to_db(l));
    EXPECT_EQ(again.spec, l.spec);
    for (const auto& [r, t] : l.structure.tables)
      EXPECT_TRUE(key_equivalent(again.structure.table(r), relation_include(table_image(t))));
  });
}

TEST(LogicDbProperty, PassagesPreserveIdentitiesAndComposites) {
  for_cases(16, [](Gen& g) {
    auto c = testing::logic_morphism(g);
    Database db2 = snd_to_db(c.l2);
    Database db1 = snd_to_db(c.l1);
    EXPECT_EQ(snd_mor_to_db_mor(SoundLogicMorphism::identity(c.l1), c.l1, c.l1),
              DatabaseMorphism::identity(db1));

    DatabaseMorphism dm = snd_mor_to_db_mor(c.m, c.l2, c.l1);
    SoundLogicMorphism composite = SoundLogicMorphism::identity(c.l2).then(c.m);
    ASSERT_TRUE(validate_sound_logic_morphism(composite, c.l2, c.l1));
    DatabaseMorphism via = snd_mor_to_db_mor(composite, c.l2, c.l1);
    DatabaseMorphism then = DatabaseMorphism::identity(db2).then(dm);
    EXPECT_EQ(via.key_bridge, then.key_bridge);
    EXPECT_EQ(via.schema_map.bridge, then.schema_map.bridge);
    EXPECT_EQ(via.schema_map.constraint_map, then.schema_map.constraint_map);

    SoundLogicMorphism id_back = db_mor_to_snd_mor(DatabaseMorphism::identity(db1), db1, db1);
    EXPECT_EQ(id_back.structure_map.key_bridge,
              LaxStructureMorphism::identity(db_to_snd(db1).structure).key_bridge);
    SoundLogicMorphism sm = db_mor_to_snd_mor(then, db2, db1);
    SoundLogicMorphism sm_then =
        db_mor_to_snd_mor(DatabaseMorphism::identity(db2), db2, db2)
            .then(db_mor_to_snd_mor(dm, db2, db1));
    EXPECT_EQ(sm.structure_map.key_bridge, sm_then.structure_map.key_bridge);
  });
}

// ---------------------------------------------------------------------------
// cli

TEST(CliProperty, ConvertIsDeterministicAndReloads) {
  for_cases(17, [](Gen& g) {
    SoundLogic l = g.sound_logic();
    cli::json doc;
    doc["typeDomains"]["td"] = cli::to_json(l.structure.type_domain);
    doc["schemas"]["s"] = cli::to_json(l.spec.schema, "td");
    doc["specs"]["t"] = cli::to_json(l.spec, "s");
    doc["structures"]["m"] = cli::to_json(l.structure, "s");
    doc["logics"]["l"] = {{"structure", "m"}, {"spec", "t"}};
    cli::Workspace ws = cli::load_workspace(doc);
    ASSERT_TRUE(ws.diagnostics.empty());
    std::ostringstream a, b;
    ASSERT_EQ(cli::cmd_convert(ws, "snd-to-db", "l", {}, a), 0);
    ASSERT_EQ(cli::cmd_convert(ws, "snd-to-db", "l", {}, b), 0);
    EXPECT_EQ(a.str(), b.str());
    cli::Workspace back = cli::load_workspace(cli::json::parse(a.str()));
    EXPECT_TRUE(back.diagnostics.empty());
    EXPECT_EQ(back.database("l"), snd_to_db(l));
  });
}

}  // namespace
}  // namespace fole
