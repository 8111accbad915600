#include "fole/core.hpp"

#include <algorithm>
#include <set>

namespace fole {

namespace {

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

// ---------------------------------------------------------------------------
// TypeDomain

TypeDomain::TypeDomain(std::vector<std::pair<Sort, std::vector<Value>>> extents,
                       std::vector<Value> unclassified) {
  std::set<Value> seen;
  for (auto& [sort, values] : extents) {
    if (extents_.count(sort)) throw Error("DuplicateSort", quote(sort));
    std::set<Value> local;
    for (const auto& y : values) {
      if (!local.insert(y).second)
        throw Error("DuplicateValue", quote(y) + " in extent of " + quote(sort));
      if (seen.insert(y).second) instances_.push_back(y);
    }
    sorts_.push_back(sort);
    extents_.emplace(sort, std::move(values));
  }
  for (auto& y : unclassified) {
    if (seen.count(y))
      throw Error("ClassifiedValue", quote(y) + " is already in some extent");
    seen.insert(y);
    instances_.push_back(y);
    unclassified_.push_back(std::move(y));
  }
}

const std::vector<Value>& TypeDomain::extent(const Sort& x) const {
  auto it = extents_.find(x);
  if (it == extents_.end()) throw Error("UnknownSort", quote(x));
  return it->second;
}

bool TypeDomain::contains(const Sort& x, const Value& y) const {
  auto it = extents_.find(x);
  if (it == extents_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), y) != it->second.end();
}

std::size_t TypeDomain::rank(const Sort& x, const Value& y) const {
  const auto& ext = extent(x);
  auto it = std::find(ext.begin(), ext.end(), y);
  if (it == ext.end()) throw Error("NotInExtent", quote(y) + " not in " + quote(x));
  return static_cast<std::size_t>(it - ext.begin());
}

ClassificationReport classify(const TypeDomain& td) {
  ClassificationReport report;
  const auto& sorts = td.sorts();

  std::map<Value, std::set<Sort>> intent;
  for (const auto& y : td.instances()) intent[y];
  for (const auto& x : sorts)
    for (const auto& y : td.extent(x)) intent[y].insert(x);

  std::set<std::set<Sort>> intents;
  report.separated = true;
  for (const auto& [y, types] : intent)
    if (!intents.insert(types).second) report.separated = false;

  report.extensional = true;
  report.disjoint = true;
  for (std::size_t a = 0; a < sorts.size(); ++a) {
    std::set<Value> ea(td.extent(sorts[a]).begin(), td.extent(sorts[a]).end());
    for (std::size_t b = a + 1; b < sorts.size(); ++b) {
      std::set<Value> eb(td.extent(sorts[b]).begin(), td.extent(sorts[b]).end());
      if (ea == eb) report.extensional = false;
      for (const auto& y : ea)
        if (eb.count(y)) report.disjoint = false;
    }
  }

  std::vector<Value> unclassified;
  for (const auto& y : td.instances())
    if (intent[y].empty()) unclassified.push_back(y);

  report.partitioned = report.disjoint && unclassified.empty();
  report.pseudo_partitioned = report.disjoint && unclassified.size() == 1;
  if (report.pseudo_partitioned) report.special_instance = unclassified.front();
  return report;
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
  std::set<std::string> names;
  for (const auto& a : attrs_)
    if (!names.insert(a.name).second) throw Error("DuplicateAttribute", quote(a.name));
}

std::optional<std::size_t> Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < attrs_.size(); ++i)
    if (attrs_[i].name == name) return i;
  return std::nullopt;
}

std::string to_string(const Signature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += sig[i].name + ":" + sig[i].sort;
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// SignatureMorphism

SignatureMorphism::SignatureMorphism(Signature source, Signature target,
                                     std::vector<std::size_t> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size())
    throw Error("ArityMismatch", "index map has " + std::to_string(map_.size()) +
                                     " entries for source " + to_string(source_));
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] >= target_.size())
      throw Error("IndexOutOfRange", "source index " + source_[i].name +
                                         " maps outside " + to_string(target_));
}

SignatureMorphism SignatureMorphism::from_names(
    Signature source, Signature target,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::optional<std::size_t>> slots(source.size());
  for (const auto& [from, to] : pairs) {
    auto i = source.index_of(from);
    if (!i) throw Error("UnknownAttribute", quote(from) + " not in source " + to_string(source));
    auto j = target.index_of(to);
    if (!j) throw Error("UnknownAttribute", quote(to) + " not in target " + to_string(target));
    if (slots[*i]) throw Error("DuplicateMapping", quote(from) + " mapped twice");
    slots[*i] = *j;
  }
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw Error("UnmappedAttribute", quote(source[i].name));
    map.push_back(*slots[i]);
  }
  return SignatureMorphism(std::move(source), std::move(target), std::move(map));
}

SignatureMorphism SignatureMorphism::identity(const Signature& sig) {
  std::vector<std::size_t> map(sig.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return SignatureMorphism(sig, sig, std::move(map));
}

SignatureMorphism SignatureMorphism::then(const SignatureMorphism& next) const {
  if (target_ != next.source_)
    throw Error("NotComposable", to_string(target_) + " vs " + to_string(next.source_));
  std::vector<std::size_t> map(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) map[i] = next.map_[map_[i]];
  return SignatureMorphism(source_, next.target_, std::move(map));
}

std::string to_string(const SignatureMorphism& h) {
  std::string out = "{";
  for (std::size_t i = 0; i < h.map().size(); ++i) {
    if (i) out += ",";
    out += h.source()[i].name + "->" + h.target()[h(i)].name;
  }
  return out + "}";
}

Verdict check_signature_morphism(const SignatureMorphism& h) {
  for (std::size_t i = 0; i < h.map().size(); ++i) {
    const auto& want = h.source().sort_at(i);
    const auto& got = h.target().sort_at(h(i));
    if (want != got)
      return Verdict::fail("SortMismatch", h.source()[i].name + ": " + want + " vs " +
                                               h.target()[h(i)].name + ": " + got);
  }
  return Verdict::ok();
}

// ---------------------------------------------------------------------------
// Tuples

bool well_sorted(const Tuple& t, const Signature& sig, const TypeDomain& td) {
  if (t.size() != sig.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!td.contains(sig.sort_at(i), t[i])) return false;
  return true;
}

std::vector<Tuple> enumerate_tuples(const Signature& sig, const TypeDomain& td) {
  std::vector<const std::vector<Value>*> extents;
  for (const auto& a : sig.attributes()) extents.push_back(&td.extent(a.sort));

  std::vector<Tuple> out;
  for (const auto* e : extents)
    if (e->empty()) return out;

  std::vector<std::size_t> odometer(extents.size(), 0);
  while (true) {
    Tuple t(extents.size());
    for (std::size_t i = 0; i < extents.size(); ++i) t[i] = (*extents[i])[odometer[i]];
    out.push_back(std::move(t));

    std::size_t i = extents.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < extents[i]->size()) break;
      odometer[i] = 0;
      if (i == 0) return out;
    }
    if (extents.empty()) return out;
  }
}

Tuple tuple_along(const SignatureMorphism& h, const Tuple& t) {
  Tuple out(h.map().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.at(h(i));
  return out;
}

std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    for (char c : t[i]) {
      if (c == '\\' || c == ',' || c == '(' || c == ')' || c == '|' || c == '<' || c == '>')
        out += '\\';
      out += c;
    }
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Type-domain morphisms

TypeDomainMorphism TypeDomainMorphism::identity(const TypeDomain& td) {
  TypeDomainMorphism m;
  for (const auto& x : td.sorts()) m.sort_map[x] = x;
  for (const auto& y : td.instances()) m.value_map[y] = y;
  return m;
}

const Sort& TypeDomainMorphism::sort(const Sort& x2) const {
  auto it = sort_map.find(x2);
  if (it == sort_map.end()) throw Error("UnmappedSort", quote(x2));
  return it->second;
}

const Value& TypeDomainMorphism::value(const Value& y1) const {
  auto it = value_map.find(y1);
  if (it == value_map.end()) throw Error("UnmappedValue", quote(y1));
  return it->second;
}

TypeDomainMorphism TypeDomainMorphism::then(const TypeDomainMorphism& next) const {
  TypeDomainMorphism out;
  for (const auto& [x3, x2] : sort_map) out.sort_map[x3] = next.sort(x2);
  for (const auto& [y1, y2] : next.value_map) out.value_map[y1] = value(y2);
  return out;
}

Verdict check_type_domain_morphism(const TypeDomainMorphism& m, const TypeDomain& a2,
                                   const TypeDomain& a1) {
  for (const auto& x2 : a2.sorts()) {
    auto f = m.sort_map.find(x2);
    if (f == m.sort_map.end()) return Verdict::fail("UnmappedSort", quote(x2));
    if (!a1.has_sort(f->second))
      return Verdict::fail("UnknownSort", quote(f->second) + " (image of " + quote(x2) + ")");
  }
  for (const auto& y1 : a1.instances())
    if (!m.value_map.count(y1)) return Verdict::fail("UnmappedValue", quote(y1));

  for (const auto& x2 : a2.sorts()) {
    const Sort& x1 = m.sort_map.at(x2);
    for (const auto& y1 : a1.instances()) {
      const Value& y2 = m.value_map.at(y1);
      bool lhs = a2.contains(x2, y2);
      bool rhs = a1.contains(x1, y1);
      if (lhs == rhs) continue;
      std::string where = "(" + x2 + ", " + y1 + "): ";
      if (rhs)
        return Verdict::fail("InfomorphismViolation",
                             where + y1 + " in ext(" + x1 + ") but g(" + y1 + ")=" + y2 +
                                 " not in ext(" + x2 + ")");
      return Verdict::fail("InfomorphismViolation",
                           where + "g(" + y1 + ")=" + y2 + " in ext(" + x2 + ") but " + y1 +
                               " not in ext(" + x1 + ")");
    }
  }
  return Verdict::ok();
}

Signature sum_along(const TypeDomainMorphism& m, const Signature& sig2) {
  std::vector<Attribute> attrs;
  for (const auto& a : sig2.attributes()) attrs.push_back({a.name, m.sort(a.sort)});
  return Signature(std::move(attrs));
}

Signature pull_along(const TypeDomainMorphism& m, const Signature& sig1,
                     const TypeDomain& a2) {
  std::vector<Attribute> attrs;
  for (const auto& a : sig1.attributes())
    for (const auto& x2 : a2.sorts())
      if (m.sort(x2) == a.sort) attrs.push_back({a.name + ":" + x2, x2});
  return Signature(std::move(attrs));
}

Tuple map_values(const TypeDomainMorphism& m, const Tuple& t) {
  Tuple out;
  out.reserve(t.size());
  for (const auto& y : t) out.push_back(m.value(y));
  return out;
}

}  // namespace fole
