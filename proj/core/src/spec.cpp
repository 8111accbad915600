#include "fole/spec.hpp"

#include <set>

namespace fole {

const AbstractConstraint& AbstractSpec::constraint(const std::string& name) const {
  for (const auto& c : constraints)
    if (c.name == name) return c;
  throw Error("UnknownConstraint", name);
}

bool AbstractSpec::has_constraint(const std::string& name) const {
  for (const auto& c : constraints)
    if (c.name == name) return true;
  return false;
}

std::pair<std::string, std::string> path_ends(const AbstractSpec& t, const Path& p,
                                              const std::string& at) {
  if (p.empty()) return {at, at};
  std::string start = t.constraint(p.front()).source;
  std::string here = start;
  for (const auto& name : p) {
    const auto& c = t.constraint(name);
    if (c.source != here)
      throw Error("PathMismatch", to_string(p) + ": " + name + " starts at " + c.source +
                                      ", not " + here);
    here = c.target;
  }
  return {start, here};
}

SignatureMorphism path_morphism(const AbstractSpec& t, const Path& p, const std::string& at) {
  auto [start, end] = path_ends(t, p, at);
  SignatureMorphism h = SignatureMorphism::identity(t.schema.signature(start));
  for (const auto& name : p) h = h.then(t.constraint(name).h);
  return h;
}

std::string to_string(const Path& p) {
  if (p.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ";" : "") + p[i];
  return out;
}

Verdict validate_spec(const AbstractSpec& t, const TypeDomain& td) {
  if (auto v = t.schema.validate(td); !v) return v;
  std::set<std::string> names;
  for (const auto& c : t.constraints) {
    if (!names.insert(c.name).second) return Verdict::fail("DuplicateConstraint", c.name);
    if (!t.schema.has(c.source)) return Verdict::fail("UnknownPredicate", c.source);
    if (!t.schema.has(c.target)) return Verdict::fail("UnknownPredicate", c.target);
    if (c.h.source() != t.schema.signature(c.source) ||
        c.h.target() != t.schema.signature(c.target))
      return Verdict::fail("SignatureMismatch", c.name + ": " + to_string(c.h.source()) + " -> " +
                                                    to_string(c.h.target()));
    if (auto v = check_signature_morphism(c.h); !v)
      return Verdict::fail(v.code(), c.name + ": " + v.detail());
  }
  for (const auto& eq : t.equations) {
    try {
      std::string at = !eq.lhs.empty() ? t.constraint(eq.lhs.front()).source
                       : !eq.rhs.empty() ? t.constraint(eq.rhs.front()).source
                                         : std::string();
      if (at.empty()) continue;
      auto l = path_ends(t, eq.lhs, at);
      auto r = path_ends(t, eq.rhs, at);
      if (l != r)
        return Verdict::fail("PathMismatch",
                             to_string(eq.lhs) + " = " + to_string(eq.rhs) + ": endpoints differ");
      if (path_morphism(t, eq.lhs, at) != path_morphism(t, eq.rhs, at))
        return Verdict::fail("FunctorialityViolation",
                             to_string(eq.lhs) + " = " + to_string(eq.rhs) +
                                 ": composite signature morphisms differ");
    } catch (const Error& e) {
      return Verdict::fail(e.code(), e.detail());
    }
  }
  return Verdict::ok();
}

FormalSpec companion_formal(const AbstractSpec& t) {
  FormalSpec out;
  for (const auto& c : t.constraints)
    out.constraints.push_back({c.name, Formula::atom(c.source), Formula::atom(c.target), c.name, c.h});
  return out;
}

bool SpecReport::satisfied() const {
  for (const auto& [name, v] : items)
    if (!std::holds_alternative<ConstraintWitness>(v)) return false;
  return true;
}

SpecReport satisfies_spec(const LaxStructure& m, const FormalSpec& t) {
  SpecReport out;
  for (const auto& c : t.constraints) out.items.emplace_back(c.name, satisfies_constraint(m, c));
  return out;
}

SpecReport satisfies_spec(const LaxStructure& m, const AbstractSpec& t) {
  return satisfies_spec(m, companion_formal(t));
}

// ---------------------------------------------------------------------------
// Relation morphisms and the table passage

RelationMorphism compose(const RelationMorphism& first, const RelationMorphism& next) {
  RelationMorphism out{first.h.then(next.h), first.source, next.target, {}};
  for (const auto& [c, b] : next.map) out.map[c] = first.map.at(b);
  return out;
}

RelationMorphism identity_relation_morphism(const Relation& r) {
  RelationMorphism out{SignatureMorphism::identity(r.signature), r, r, {}};
  for (const auto& t : r.tuples) out.map[t] = t;
  return out;
}

TableMorphism as_table_morphism(const RelationMorphism& m) {
  TableMorphism out{m.h, {}};
  for (const auto& [t, s] : m.map) out.key_map[tuple_key(t)] = tuple_key(s);
  return out;
}

RelationMorphism passage_along(const TablePassage& tp, const AbstractSpec& t, const Path& p,
                               const std::string& at) {
  auto [start, end] = path_ends(t, p, at);
  RelationMorphism out = identity_relation_morphism(tp.objects.at(start));
  for (const auto& name : p) out = compose(out, tp.arrows.at(name));
  return out;
}

std::variant<TablePassage, Refutation> abstract_table_passage(const LaxStructure& m,
                                                              const AbstractSpec& t) {
  SpecReport report = satisfies_spec(m, t);
  for (const auto& [name, v] : report.items)
    if (auto* r = std::get_if<Refutation>(&v)) return *r;

  TablePassage out;
  for (const auto& r : m.schema.predicates())
    out.objects.emplace(r, interpret_relation(m, Formula::atom(r)));
  for (const auto& c : t.constraints) {
    const Relation& src = out.objects.at(c.source);
    const Relation& tgt = out.objects.at(c.target);
    RelationMorphism arrow{c.h, src, tgt, {}};
    for (const auto& tup : tgt.tuples) arrow.map[tup] = tuple_along(c.h, tup);
    out.arrows.emplace(c.name, std::move(arrow));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Specification morphisms

SpecMorphism SpecMorphism::identity(const AbstractSpec& t) {
  SpecMorphism out;
  for (const auto& r : t.schema.predicates()) {
    out.predicate_map[r] = r;
    out.bridge.emplace(r, SignatureMorphism::identity(t.schema.signature(r)));
    for (const auto& a : t.schema.signature(r).attributes()) out.sort_map[a.sort] = a.sort;
  }
  for (const auto& c : t.constraints) out.constraint_map[c.name] = {c.name};
  return out;
}

SpecMorphism SpecMorphism::then(const SpecMorphism& next) const {
  SpecMorphism out;
  for (const auto& [x3, x2] : sort_map) {
    auto it = next.sort_map.find(x2);
    if (it == next.sort_map.end()) throw Error("UnmappedSort", x2);
    out.sort_map[x3] = it->second;
  }
  for (const auto& [r3, r2] : predicate_map) {
    out.predicate_map[r3] = next.predicate_map.at(r2);
    const auto& inner = bridge.at(r3);
    const auto& outer = next.bridge.at(r2);
    std::vector<Attribute> attrs;
    for (const auto& a : inner.source().attributes())
      attrs.push_back({a.name, next.sort_map.at(a.sort)});
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < inner.map().size(); ++i) map.push_back(outer(inner(i)));
    out.bridge.emplace(r3, SignatureMorphism(Signature(attrs), outer.target(), map));
  }
  for (const auto& [p3, path2] : constraint_map) {
    Path& path1 = out.constraint_map[p3];
    for (const auto& p2 : path2)
      for (const auto& p1 : next.constraint_map.at(p2)) path1.push_back(p1);
  }
  return out;
}

Verdict validate_spec_morphism(const SpecMorphism& m, const AbstractSpec& t2,
                               const AbstractSpec& t1) {
  for (const auto& r2 : t2.schema.predicates()) {
    auto r = m.predicate_map.find(r2);
    if (r == m.predicate_map.end()) return Verdict::fail("UnmappedPredicate", r2);
    if (!t1.schema.has(r->second))
      return Verdict::fail("UnknownPredicate", r->second + " (image of " + r2 + ")");
    std::vector<Attribute> pushed;
    for (const auto& a : t2.schema.signature(r2).attributes()) {
      auto f = m.sort_map.find(a.sort);
      if (f == m.sort_map.end()) return Verdict::fail("UnmappedSort", a.sort);
      pushed.push_back({a.name, f->second});
    }
    auto b = m.bridge.find(r2);
    if (b == m.bridge.end()) return Verdict::fail("MissingBridge", r2);
    if (b->second.source() != Signature(pushed) ||
        b->second.target() != t1.schema.signature(r->second))
      return Verdict::fail("SignatureMismatch", r2 + ": bridge " +
                                                    to_string(b->second.source()) + " -> " +
                                                    to_string(b->second.target()));
    if (auto v = check_signature_morphism(b->second); !v)
      return Verdict::fail(v.code(), r2 + ": " + v.detail());
  }
  for (const auto& p2 : t2.constraints) {
    auto it = m.constraint_map.find(p2.name);
    if (it == m.constraint_map.end()) return Verdict::fail("UnmappedConstraint", p2.name);
    const std::string& src1 = m.predicate_map.at(p2.source);
    const std::string& tgt1 = m.predicate_map.at(p2.target);
    SignatureMorphism h1;
    try {
      auto ends = path_ends(t1, it->second, src1);
      if (ends != std::make_pair(src1, tgt1))
        return Verdict::fail("PathMismatch", p2.name + " -> " + to_string(it->second) + " runs " +
                                                 ends.first + " -> " + ends.second +
                                                 ", expected " + src1 + " -> " + tgt1);
      h1 = path_morphism(t1, it->second, src1);
    } catch (const Error& e) {
      return Verdict::fail(e.code(), p2.name + ": " + e.detail());
    }
    const auto& phi_src = m.bridge.at(p2.source);
    const auto& phi_tgt = m.bridge.at(p2.target);
    for (std::size_t i = 0; i < p2.h.map().size(); ++i) {
      std::size_t via_h2 = phi_tgt(p2.h(i));
      std::size_t via_h1 = h1(phi_src(i));
      if (via_h2 != via_h1)
        return Verdict::fail("NaturalityViolation",
                             p2.name + " at " + p2.h.source()[i].name + ": " +
                                 phi_tgt.target()[via_h2].name + " vs " +
                                 h1.target()[via_h1].name);
    }
  }
  return Verdict::ok();
}

}  // namespace fole
