#ifndef FOLE_CORE_HPP
#define FOLE_CORE_HPP

// Foundational finite data: sorts, values, type domains, signatures,
// signature morphisms, tuples and type-domain infomorphisms.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fole/error.hpp"

namespace fole {

using Sort = std::string;
using Value = std::string;

// A tuple is positional: component i is the value at index i of the
// signature it is read against.
using Tuple = std::vector<Value>;

// Sort-indexed finite value extents (the attribute classification).
//
// The instance set is the union of all extents plus any explicitly
// declared unclassified instances. Enumeration order everywhere follows
// insertion order.
class TypeDomain {
 public:
  TypeDomain() = default;
  explicit TypeDomain(std::vector<std::pair<Sort, std::vector<Value>>> extents,
                      std::vector<Value> unclassified = {});

  const std::vector<Sort>& sorts() const noexcept { return sorts_; }
  bool has_sort(const Sort& x) const { return extents_.count(x) != 0; }

  // Throws UnknownSort.
  const std::vector<Value>& extent(const Sort& x) const;
  bool contains(const Sort& x, const Value& y) const;

  // Position of y inside ext(x); throws UnknownSort / NotInExtent.
  std::size_t rank(const Sort& x, const Value& y) const;

  // Every instance, first-seen order (extents in sort order, then extras).
  const std::vector<Value>& instances() const noexcept { return instances_; }
  const std::vector<Value>& unclassified() const noexcept { return unclassified_; }

  bool operator==(const TypeDomain&) const = default;

 private:
  std::vector<Sort> sorts_;
  std::map<Sort, std::vector<Value>> extents_;
  std::vector<Value> unclassified_;
  std::vector<Value> instances_;
};

struct ClassificationReport {
  bool separated = false;
  bool extensional = false;
  bool disjoint = false;
  bool partitioned = false;
  bool pseudo_partitioned = false;
  std::optional<Value> special_instance;
};

ClassificationReport classify(const TypeDomain& td);

struct Attribute {
  std::string name;
  Sort sort;

  auto operator<=>(const Attribute&) const = default;
};

// An ordered, named, sorted header. Equality is order-sensitive.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Attribute> attrs);  // throws DuplicateAttribute

  std::size_t size() const noexcept { return attrs_.size(); }
  bool empty() const noexcept { return attrs_.empty(); }
  const std::vector<Attribute>& attributes() const noexcept { return attrs_; }
  const Attribute& operator[](std::size_t i) const { return attrs_[i]; }
  const Sort& sort_at(std::size_t i) const { return attrs_.at(i).sort; }

  std::optional<std::size_t> index_of(const std::string& name) const;

  auto operator<=>(const Signature&) const = default;

 private:
  std::vector<Attribute> attrs_;
};

std::string to_string(const Signature& sig);

// A reindexing h: I' -> I between two signatures, stored positionally:
// map()[i'] is the target position that source position i' reads from.
//
// Sort preservation is not enforced at construction so that invalid
// morphisms can be represented and reported by check_signature_morphism.
class SignatureMorphism {
 public:
  SignatureMorphism() = default;
  SignatureMorphism(Signature source, Signature target,
                    std::vector<std::size_t> map);

  // Builds from attribute-name pairs (source attr -> target attr); every
  // source attribute must be mapped exactly once.
  static SignatureMorphism from_names(
      Signature source, Signature target,
      const std::vector<std::pair<std::string, std::string>>& pairs);
  static SignatureMorphism identity(const Signature& sig);

  const Signature& source() const noexcept { return source_; }
  const Signature& target() const noexcept { return target_; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }
  std::size_t operator()(std::size_t i) const { return map_.at(i); }

  // Diagrammatic composition: (*this : A -> B).then(next : B -> C) : A -> C.
  SignatureMorphism then(const SignatureMorphism& next) const;

  bool operator==(const SignatureMorphism&) const = default;

 private:
  Signature source_;
  Signature target_;
  std::vector<std::size_t> map_;
};

std::string to_string(const SignatureMorphism& h);

// SortMismatch naming the first violating source attribute.
Verdict check_signature_morphism(const SignatureMorphism& h);

bool well_sorted(const Tuple& t, const Signature& sig, const TypeDomain& td);

// All well-sorted tuples over sig, lexicographic in extent order with the
// first attribute most significant. Throws UnknownSort.
std::vector<Tuple> enumerate_tuples(const Signature& sig, const TypeDomain& td);

// Precomposition: result[i'] = t[h(i')]; t is read over h.target().
Tuple tuple_along(const SignatureMorphism& h, const Tuple& t);

// An infomorphism A2 <=> A1: sorts flow forward (f: X2 -> X1), values
// flow backward (g: Y1 -> Y2).
struct TypeDomainMorphism {
  std::map<Sort, Sort> sort_map;
  std::map<Value, Value> value_map;

  static TypeDomainMorphism identity(const TypeDomain& td);

  const Sort& sort(const Sort& x2) const;     // throws UnmappedSort
  const Value& value(const Value& y1) const;  // throws UnmappedValue

  // Diagrammatic composite of (*this: A3 <=> A2) with (next: A2 <=> A1).
  TypeDomainMorphism then(const TypeDomainMorphism& next) const;

  bool operator==(const TypeDomainMorphism&) const = default;
};

// Accepts iff g(y1) in ext2(x2) <=> y1 in ext1(f(x2)) for every x2 and y1.
// Failure code InfomorphismViolation; the detail names (x2, y1) and which
// side of the biconditional failed.
Verdict check_type_domain_morphism(const TypeDomainMorphism& m,
                                   const TypeDomain& a2, const TypeDomain& a1);

// Sigma_f: the same attributes with every sort pushed along f.
Signature sum_along(const TypeDomainMorphism& m, const Signature& sig2);

// f*: attributes (i, x2) for every x2 with f(x2) = s1(i), named "attr:x2",
// ordered by attribute then by the source domain's sort order.
Signature pull_along(const TypeDomainMorphism& m, const Signature& sig1,
                     const TypeDomain& a2);

// Postcomposition with g.
Tuple map_values(const TypeDomainMorphism& m, const Tuple& t);

std::string format_tuple(const Tuple& t);

}  // namespace fole

#endif
