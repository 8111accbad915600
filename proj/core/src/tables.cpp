#include "fole/tables.hpp"

#include <algorithm>
#include <iterator>

namespace fole {

namespace {

void require_signature(const Signature& want, const Signature& got, const char* what) {
  if (want != got)
    throw Error("SignatureMismatch",
                std::string(what) + ": expected " + to_string(want) + ", got " + to_string(got));
}

// Escape used inside pair keys so that the key part cannot swallow the bar.
std::string escape_key(const Key& k) {
  std::string out;
  for (char c : k) {
    if (c == '\\' || c == '|' || c == '<' || c == '>') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Key tuple_key(const Tuple& t) { return format_tuple(t); }

Key pair_key(const Key& k, const Tuple& t) {
  return "<" + escape_key(k) + "|" + format_tuple(t) + ">";
}

// ---------------------------------------------------------------------------
// Table

Table::Table(Signature sig, const std::vector<std::pair<Key, Tuple>>& rows)
    : sig_(std::move(sig)) {
  for (const auto& [k, t] : rows) insert(k, t);
}

void Table::insert(Key k, Tuple t) {
  if (t.size() != sig_.size())
    throw Error("ArityMismatch", "key " + k + " has " + std::to_string(t.size()) +
                                     " values for " + to_string(sig_));
  if (rows_.count(k)) throw Error("DuplicateKey", k);
  keys_.push_back(k);
  rows_.emplace(std::move(k), std::move(t));
}

const Tuple& Table::tuple_of(const Key& k) const {
  auto it = rows_.find(k);
  if (it == rows_.end()) throw Error("UnknownKey", k);
  return it->second;
}

bool subset_of(const Relation& a, const Relation& b) {
  return std::includes(b.tuples.begin(), b.tuples.end(), a.tuples.begin(), a.tuples.end());
}

Verdict validate_table(const Table& t, const TypeDomain& td) {
  for (const auto& a : t.signature().attributes())
    if (!td.has_sort(a.sort)) return Verdict::fail("UnknownSort", a.sort);
  for (const auto& k : t.keys())
    if (!well_sorted(t.tuple_of(k), t.signature(), td))
      return Verdict::fail("IllSortedTuple", "key " + k + " -> " + format_tuple(t.tuple_of(k)) +
                                                 " over " + to_string(t.signature()));
  return Verdict::ok();
}

Verdict validate_relation(const Relation& r, const TypeDomain& td) {
  for (const auto& a : r.signature.attributes())
    if (!td.has_sort(a.sort)) return Verdict::fail("UnknownSort", a.sort);
  for (const auto& t : r.tuples)
    if (!well_sorted(t, r.signature, td))
      return Verdict::fail("IllSortedTuple",
                           format_tuple(t) + " over " + to_string(r.signature));
  return Verdict::ok();
}

Relation table_image(const Table& t) {
  Relation r{t.signature(), {}};
  for (const auto& k : t.keys()) r.tuples.insert(t.tuple_of(k));
  return r;
}

Table relation_include(const Relation& r) {
  Table t(r.signature);
  for (const auto& tup : r.tuples) t.insert(tuple_key(tup), tup);
  return t;
}

std::vector<Tuple> in_enumeration_order(const Relation& r, const TypeDomain& td) {
  std::vector<std::pair<std::vector<std::size_t>, const Tuple*>> ranked;
  for (const auto& t : r.tuples) {
    std::vector<std::size_t> rank(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) rank[i] = td.rank(r.signature.sort_at(i), t[i]);
    ranked.emplace_back(std::move(rank), &t);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<Tuple> out;
  for (const auto& [rank, t] : ranked) out.push_back(*t);
  return out;
}

// ---------------------------------------------------------------------------
// Fiber connectives

std::size_t arity(BoolOp op) {
  switch (op) {
    case BoolOp::Top:
    case BoolOp::Bottom: return 0;
    case BoolOp::Negation: return 1;
    default: return 2;
  }
}

const char* to_string(BoolOp op) {
  switch (op) {
    case BoolOp::Meet: return "meet";
    case BoolOp::Join: return "join";
    case BoolOp::Top: return "top";
    case BoolOp::Bottom: return "bottom";
    case BoolOp::Negation: return "negation";
    case BoolOp::Implication: return "implication";
    case BoolOp::Difference: return "difference";
  }
  return "?";
}

Relation fiber_boolean(BoolOp op, const std::vector<Relation>& operands,
                       const Signature& sig, const TypeDomain& td) {
  if (operands.size() != arity(op))
    throw Error("OperandCount", std::string(to_string(op)) + " takes " +
                                    std::to_string(arity(op)) + " operands, got " +
                                    std::to_string(operands.size()));
  for (const auto& r : operands) require_signature(sig, r.signature, to_string(op));

  auto top = [&] {
    auto all = enumerate_tuples(sig, td);
    return std::set<Tuple>(all.begin(), all.end());
  };
  auto minus = [](const std::set<Tuple>& a, const std::set<Tuple>& b) {
    std::set<Tuple> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  };

  Relation out{sig, {}};
  switch (op) {
    case BoolOp::Meet: {
      const auto& a = operands[0].tuples;
      const auto& b = operands[1].tuples;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(out.tuples, out.tuples.end()));
      break;
    }
    case BoolOp::Join:
      out.tuples = operands[0].tuples;
      out.tuples.insert(operands[1].tuples.begin(), operands[1].tuples.end());
      break;
    case BoolOp::Top: out.tuples = top(); break;
    case BoolOp::Bottom: break;
    case BoolOp::Negation: out.tuples = minus(top(), operands[0].tuples); break;
    case BoolOp::Implication:
      out.tuples = minus(top(), operands[0].tuples);
      out.tuples.insert(operands[1].tuples.begin(), operands[1].tuples.end());
      break;
    case BoolOp::Difference: out.tuples = minus(operands[0].tuples, operands[1].tuples); break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flow along signature morphisms

const char* to_string(Flow f) {
  switch (f) {
    case Flow::Exists: return "exists";
    case Flow::Preimage: return "preimage";
    case Flow::Forall: return "forall";
  }
  return "?";
}

Relation fiber_flow(Flow mode, const SignatureMorphism& h, const Relation& r,
                    const TypeDomain& td) {
  check_signature_morphism(h).raise();
  Relation out;
  switch (mode) {
    case Flow::Exists:
      require_signature(h.target(), r.signature, "exists");
      out.signature = h.source();
      for (const auto& t : r.tuples) out.tuples.insert(tuple_along(h, t));
      break;
    case Flow::Preimage:
      require_signature(h.source(), r.signature, "preimage");
      out.signature = h.target();
      for (auto& t : enumerate_tuples(h.target(), td))
        if (r.contains(tuple_along(h, t))) out.tuples.insert(std::move(t));
      break;
    case Flow::Forall: {
      require_signature(h.target(), r.signature, "forall");
      out.signature = h.source();
      std::set<Tuple> refuted;
      for (const auto& t : enumerate_tuples(h.target(), td))
        if (!r.contains(t)) refuted.insert(tuple_along(h, t));
      for (auto& t : enumerate_tuples(h.source(), td))
        if (!refuted.count(t)) out.tuples.insert(std::move(t));
      break;
    }
  }
  return out;
}

Table table_sigma(const SignatureMorphism& h, const Table& t) {
  check_signature_morphism(h).raise();
  require_signature(h.target(), t.signature(), "tableSigma");
  Table out(h.source());
  for (const auto& k : t.keys()) out.insert(k, tuple_along(h, t.tuple_of(k)));
  return out;
}

Table table_substitution(const SignatureMorphism& h, const Table& t, const TypeDomain& td) {
  check_signature_morphism(h).raise();
  require_signature(h.source(), t.signature(), "tableSubstitution");
  std::map<Tuple, std::vector<Tuple>> fibre;
  for (auto& full : enumerate_tuples(h.target(), td)) {
    auto image = tuple_along(h, full);
    fibre[std::move(image)].push_back(std::move(full));
  }
  Table out(h.target());
  for (const auto& k : t.keys()) {
    auto it = fibre.find(t.tuple_of(k));
    if (it == fibre.end()) continue;
    for (const auto& full : it->second) out.insert(pair_key(k, full), full);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table morphisms

TableMorphism TableMorphism::identity(const Table& t) {
  TableMorphism m{SignatureMorphism::identity(t.signature()), {}};
  for (const auto& k : t.keys()) m.key_map[k] = k;
  return m;
}

TableMorphism TableMorphism::then(const TableMorphism& next) const {
  TableMorphism out{h.then(next.h), {}};
  for (const auto& [c, b] : next.key_map) {
    auto it = key_map.find(b);
    if (it == key_map.end()) throw Error("UnknownKey", b + " has no image in the first morphism");
    out.key_map[c] = it->second;
  }
  return out;
}

Verdict check_table_morphism(const TableMorphism& m, const Table& src, const Table& tgt) {
  if (m.h.source() != src.signature())
    return Verdict::fail("SignatureMismatch", "source table " + to_string(src.signature()) +
                                                  " vs " + to_string(m.h.source()));
  if (m.h.target() != tgt.signature())
    return Verdict::fail("SignatureMismatch", "target table " + to_string(tgt.signature()) +
                                                  " vs " + to_string(m.h.target()));
  if (auto v = check_signature_morphism(m.h); !v) return v;
  for (const auto& [from, to] : m.key_map)
    if (!tgt.has_key(from)) return Verdict::fail("UnknownKey", from + " not in target table");
  for (const auto& key : tgt.keys()) {
    auto it = m.key_map.find(key);
    if (it == m.key_map.end()) return Verdict::fail("UnmappedKey", key);
    if (!src.has_key(it->second))
      return Verdict::fail("UnknownKey", it->second + " not in source table");
    auto want = tuple_along(m.h, tgt.tuple_of(key));
    if (src.tuple_of(it->second) != want)
      return Verdict::fail("NaturalityViolation",
                           key + " -> " + it->second + ": " +
                               format_tuple(src.tuple_of(it->second)) + " != " + format_tuple(want));
  }
  return Verdict::ok();
}

bool key_equivalent(const Table& a, const Table& b) {
  require_signature(a.signature(), b.signature(), "keyEquivalent");
  if (a.size() != b.size()) return false;
  std::map<Tuple, long> count;
  for (const auto& k : a.keys()) ++count[a.tuple_of(k)];
  for (const auto& k : b.keys())
    if (--count[b.tuple_of(k)] < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Flow along type-domain morphisms

const char* to_string(Direction d) { return d == Direction::Dextro ? "dextro" : "levo"; }

Table table_flow_type_domain(Direction dir, const TypeDomainMorphism& m, const Table& t,
                             const TypeDomain& a2, const TypeDomain& a1) {
  check_type_domain_morphism(m, a2, a1).raise();
  const Signature& sig = t.signature();

  if (dir == Direction::Levo) {
    for (const auto& a : sig.attributes())
      if (!a1.has_sort(a.sort)) throw Error("UnknownSort", a.sort);
    Table out(pull_along(m, sig, a2));
    for (const auto& k : t.keys()) {
      const Tuple& row = t.tuple_of(k);
      Tuple pulled;
      for (std::size_t i = 0; i < sig.size(); ++i)
        for (const auto& x2 : a2.sorts())
          if (m.sort(x2) == sig.sort_at(i)) pulled.push_back(m.value(row[i]));
      out.insert(k, std::move(pulled));
    }
    return out;
  }

  for (const auto& a : sig.attributes())
    if (!a2.has_sort(a.sort)) throw Error("UnknownSort", a.sort);
  Signature pushed = sum_along(m, sig);
  Table out(pushed);
  for (const auto& k : t.keys()) {
    const Tuple& row = t.tuple_of(k);
    // Per position, the values of the pushed extent that g sends to row[i].
    std::vector<std::vector<Value>> choices(sig.size());
    bool empty = false;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      for (const auto& y1 : a1.extent(pushed.sort_at(i)))
        if (m.value(y1) == row[i]) choices[i].push_back(y1);
      empty = empty || choices[i].empty();
    }
    if (empty) continue;
    std::vector<std::size_t> odometer(sig.size(), 0);
    while (true) {
      Tuple t1(sig.size());
      for (std::size_t i = 0; i < sig.size(); ++i) t1[i] = choices[i][odometer[i]];
      out.insert(pair_key(k, t1), t1);
      std::size_t i = sig.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++odometer[i] < choices[i].size()) {
          done = false;
          break;
        }
        odometer[i] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

}  // namespace fole
