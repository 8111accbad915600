#include "oracle.hpp"

namespace fole::testing {

namespace {

void extend(const Signature& sig, const TypeDomain& td, Tuple& prefix, std::vector<Tuple>& out) {
  if (prefix.size() == sig.size()) {
    out.push_back(prefix);
    return;
  }
  for (const auto& y : td.extent(sig[prefix.size()].sort)) {
    prefix.push_back(y);
    extend(sig, td, prefix, out);
    prefix.pop_back();
  }
}

// u (over h.target) lies over t (over h.source) when u[h(i)] = t[i].
bool over(const SignatureMorphism& h, const Tuple& u, const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (u[h.map()[i]] != t[i]) return false;
  return true;
}

}  // namespace

std::vector<Tuple> all_tuples(const Signature& sig, const TypeDomain& td) {
  std::vector<Tuple> out;
  Tuple prefix;
  extend(sig, td, prefix, out);
  return out;
}

Signature oracle_signature(const LaxStructure& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return m.schema.signature(f.name());
    case FormulaKind::Top:
    case FormulaKind::Bottom: return f.signature();
    case FormulaKind::Exists:
    case FormulaKind::Forall: return f.morphism().source();
    case FormulaKind::Subst: return f.morphism().target();
    default: return oracle_signature(m, f.child(0));
  }
}

bool holds(const LaxStructure& m, const Formula& f, const Tuple& t) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      const Table& table = m.table(f.name());
      for (const auto& k : table.keys())
        if (table.tuple_of(k) == t) return true;
      return false;
    }
    case FormulaKind::Top: return true;
    case FormulaKind::Bottom: return false;
    case FormulaKind::Meet: return holds(m, f.child(0), t) && holds(m, f.child(1), t);
    case FormulaKind::Join: return holds(m, f.child(0), t) || holds(m, f.child(1), t);
    case FormulaKind::Negation: return !holds(m, f.child(0), t);
    case FormulaKind::Implication: return !holds(m, f.child(0), t) || holds(m, f.child(1), t);
    case FormulaKind::Difference: return holds(m, f.child(0), t) && !holds(m, f.child(1), t);
    case FormulaKind::Exists:
      for (const auto& u : all_tuples(f.morphism().target(), m.type_domain))
        if (over(f.morphism(), u, t) && holds(m, f.child(0), u)) return true;
      return false;
    case FormulaKind::Forall:
      for (const auto& u : all_tuples(f.morphism().target(), m.type_domain))
        if (over(f.morphism(), u, t) && !holds(m, f.child(0), u)) return false;
      return true;
    case FormulaKind::Subst: {
      Tuple s;
      for (auto j : f.morphism().map()) s.push_back(t[j]);
      return holds(m, f.child(0), s);
    }
  }
  return false;
}

std::set<Tuple> oracle_relation(const LaxStructure& m, const Formula& f) {
  std::set<Tuple> out;
  for (const auto& t : all_tuples(oracle_signature(m, f), m.type_domain))
    if (holds(m, f, t)) out.insert(t);
  return out;
}

std::set<Tuple> oracle_exists(const SignatureMorphism& h, const std::set<Tuple>& r,
                              const TypeDomain& td) {
  std::set<Tuple> out;
  for (const auto& t : all_tuples(h.source(), td))
    for (const auto& u : r)
      if (over(h, u, t)) {
        out.insert(t);
        break;
      }
  return out;
}

std::set<Tuple> oracle_forall(const SignatureMorphism& h, const std::set<Tuple>& r,
                              const TypeDomain& td) {
  std::set<Tuple> out;
  auto fibre_space = all_tuples(h.target(), td);
  for (const auto& t : all_tuples(h.source(), td)) {
    bool all = true;
    for (const auto& u : fibre_space)
      if (over(h, u, t) && !r.count(u)) all = false;
    if (all) out.insert(t);
  }
  return out;
}

std::set<Tuple> oracle_preimage(const SignatureMorphism& h, const std::set<Tuple>& r,
                                const TypeDomain& td) {
  std::set<Tuple> out;
  for (const auto& u : all_tuples(h.target(), td))
    for (const auto& t : r)
      if (over(h, u, t)) out.insert(u);
  return out;
}

std::set<Tuple> oracle_dextro_image(const TypeDomainMorphism& m, const Table& t,
                                    const TypeDomain& a1) {
  std::vector<Attribute> pushed;
  for (const auto& a : t.signature().attributes()) pushed.push_back({a.name, m.sort_map.at(a.sort)});
  std::set<Tuple> rows;
  for (const auto& k : t.keys()) rows.insert(t.tuple_of(k));
  std::set<Tuple> out;
  for (const auto& t1 : all_tuples(Signature(pushed), a1)) {
    Tuple image;
    for (const auto& y : t1) image.push_back(m.value_map.at(y));
    if (rows.count(image)) out.insert(t1);
  }
  return out;
}

}  // namespace fole::testing
