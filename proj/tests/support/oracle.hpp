#ifndef FOLE_TESTS_ORACLE_HPP
#define FOLE_TESTS_ORACLE_HPP

// Brute-force reference semantics that share no code with the engine: every
// relation is obtained by testing each candidate tuple for membership.

#include <set>
#include <vector>

#include "fole/logic_db.hpp"

namespace fole::testing {

// Every tuple over sig drawn from td's extents, by recursion.
std::vector<Tuple> all_tuples(const Signature& sig, const TypeDomain& td);

Signature oracle_signature(const LaxStructure& m, const Formula& f);

// Tuple-calculus membership of t (read over the formula's signature).
bool holds(const LaxStructure& m, const Formula& f, const Tuple& t);

std::set<Tuple> oracle_relation(const LaxStructure& m, const Formula& f);

// Quantifier flows by definition: exists / forall over the fibre of each
// candidate tuple, preimage by reindexing.
std::set<Tuple> oracle_exists(const SignatureMorphism& h, const std::set<Tuple>& r,
                              const TypeDomain& td);
std::set<Tuple> oracle_forall(const SignatureMorphism& h, const std::set<Tuple>& r,
                              const TypeDomain& td);
std::set<Tuple> oracle_preimage(const SignatureMorphism& h, const std::set<Tuple>& r,
                                const TypeDomain& td);

// Dextro flow image: every t1 over the pushed signature whose g-image is
// some row of t.
std::set<Tuple> oracle_dextro_image(const TypeDomainMorphism& m, const Table& t,
                                    const TypeDomain& a1);

}  // namespace fole::testing

#endif
