#ifndef FOLE_TABLES_HPP
#define FOLE_TABLES_HPP

// Tables and relations over a type domain, the fiber Boolean operations,
// quantifier flow along signature morphisms and table flow along
// type-domain infomorphisms.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fole/core.hpp"

namespace fole {

// Keys are opaque names. Keys produced by the engine use two canonical
// encodings: a tuple key "(a,b)" for relation-included tables and a pair key
// "<k|(a,b)>" for pullbacks. Both round-trip through the workspace format.
using Key = std::string;

Key tuple_key(const Tuple& t);
Key pair_key(const Key& k, const Tuple& t);

class Table {
 public:
  Table() = default;
  explicit Table(Signature sig) : sig_(std::move(sig)) {}
  Table(Signature sig, const std::vector<std::pair<Key, Tuple>>& rows);

  // Throws DuplicateKey, ArityMismatch.
  void insert(Key k, Tuple t);

  const Signature& signature() const noexcept { return sig_; }
  const std::vector<Key>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  bool has_key(const Key& k) const { return rows_.count(k) != 0; }
  const Tuple& tuple_of(const Key& k) const;  // throws UnknownKey

  bool operator==(const Table&) const = default;

 private:
  Signature sig_;
  std::vector<Key> keys_;
  std::map<Key, Tuple> rows_;
};

struct Relation {
  Signature signature;
  std::set<Tuple> tuples;

  bool contains(const Tuple& t) const { return tuples.count(t) != 0; }
  std::size_t size() const noexcept { return tuples.size(); }
  bool operator==(const Relation&) const = default;
};

bool subset_of(const Relation& a, const Relation& b);

// IllSortedTuple naming the first offending key / tuple.
Verdict validate_table(const Table& t, const TypeDomain& td);
Verdict validate_relation(const Relation& r, const TypeDomain& td);

Relation table_image(const Table& t);

// Keys are the tuples themselves (tuple_key), in set order.
Table relation_include(const Relation& r);

// Tuples of r listed in enumeration order of the type domain.
std::vector<Tuple> in_enumeration_order(const Relation& r, const TypeDomain& td);

enum class BoolOp { Meet, Join, Top, Bottom, Negation, Implication, Difference };

std::size_t arity(BoolOp op);
const char* to_string(BoolOp op);

// Operands must all lie over sig. Throws SignatureMismatch, OperandCount,
// UnknownSort.
Relation fiber_boolean(BoolOp op, const std::vector<Relation>& operands,
                       const Signature& sig, const TypeDomain& td);

enum class Flow { Exists, Preimage, Forall };

const char* to_string(Flow f);

// Exists/Forall take r over h.target and return a relation over h.source;
// Preimage goes the other way. Throws SignatureMismatch.
Relation fiber_flow(Flow mode, const SignatureMorphism& h, const Relation& r,
                    const TypeDomain& td);

// Projection: keys kept, tuples pushed through tuple_along. t over h.target.
Table table_sigma(const SignatureMorphism& h, const Table& t);

// Inflation: the pullback of t (over h.source) along the tuple map of h.
// Keys are pair_key(k, t') ordered by source key, then enumeration order.
Table table_substitution(const SignatureMorphism& h, const Table& t,
                         const TypeDomain& td);

// <h,k> from the table over h.target ("tgt") to the table over h.source
// ("src"); the key map runs contravariantly, tgt keys to src keys.
struct TableMorphism {
  SignatureMorphism h;
  std::map<Key, Key> key_map;

  static TableMorphism identity(const Table& t);

  // With *this: A <- B and next: B <- C, the composite A <- C.
  TableMorphism then(const TableMorphism& next) const;

  bool operator==(const TableMorphism&) const = default;
};

// Naturality: src.tuple_of(k(key)) = tuple_along(h, tgt.tuple_of(key)).
Verdict check_table_morphism(const TableMorphism& m, const Table& src, const Table& tgt);

// Multiset equality of tuple assignments. Throws SignatureMismatch.
bool key_equivalent(const Table& a, const Table& b);

enum class Direction { Dextro, Levo };

const char* to_string(Direction d);

// Dextro: t over a2 becomes a pullback-keyed table over a1 with signature
// sum_along(m, sig). Levo: t over a1 becomes a table over a2 with signature
// pull_along(m, sig, a2) and the same keys. Throws InfomorphismViolation.
Table table_flow_type_domain(Direction dir, const TypeDomainMorphism& m, const Table& t,
                             const TypeDomain& a2, const TypeDomain& a1);

}  // namespace fole

#endif
