#include "fole/formula.hpp"

#include <algorithm>

namespace fole {

// ---------------------------------------------------------------------------
// Schema

void Schema::add(const std::string& predicate, Signature sig) {
  if (sigs_.count(predicate)) throw Error("DuplicatePredicate", predicate);
  predicates_.push_back(predicate);
  sigs_.emplace(predicate, std::move(sig));
}

const Signature& Schema::signature(const std::string& predicate) const {
  auto it = sigs_.find(predicate);
  if (it == sigs_.end()) throw Error("UnknownPredicate", predicate);
  return it->second;
}

Verdict Schema::validate(const TypeDomain& td) const {
  for (const auto& r : predicates_)
    for (const auto& a : sigs_.at(r).attributes())
      if (!td.has_sort(a.sort))
        return Verdict::fail("UnknownSort", a.sort + " in signature of " + r);
  return Verdict::ok();
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::atom(std::string predicate) {
  return make({FormulaKind::Atom, std::move(predicate), {}, {}, {}});
}
Formula Formula::top(std::string sig_name, Signature sig) {
  return make({FormulaKind::Top, std::move(sig_name), std::move(sig), {}, {}});
}
Formula Formula::bottom(std::string sig_name, Signature sig) {
  return make({FormulaKind::Bottom, std::move(sig_name), std::move(sig), {}, {}});
}
Formula Formula::meet(Formula a, Formula b) {
  return make({FormulaKind::Meet, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::join(Formula a, Formula b) {
  return make({FormulaKind::Join, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::negation(Formula a) {
  return make({FormulaKind::Negation, {}, {}, {}, {std::move(a)}});
}
Formula Formula::implication(Formula a, Formula b) {
  return make({FormulaKind::Implication, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::difference(Formula a, Formula b) {
  return make({FormulaKind::Difference, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::exists(std::string h_name, SignatureMorphism h, Formula a) {
  return make({FormulaKind::Exists, std::move(h_name), {}, std::move(h), {std::move(a)}});
}
Formula Formula::forall(std::string h_name, SignatureMorphism h, Formula a) {
  return make({FormulaKind::Forall, std::move(h_name), {}, std::move(h), {std::move(a)}});
}
Formula Formula::subst(std::string h_name, SignatureMorphism h, Formula a) {
  return make({FormulaKind::Subst, std::move(h_name), {}, std::move(h), {std::move(a)}});
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth());
  return children().empty() ? 0 : d + 1;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.sig == y.sig && x.h == y.h &&
         x.children == y.children;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* binary_symbol(FormulaKind k) {
  switch (k) {
    case FormulaKind::Meet: return "/\\";
    case FormulaKind::Join: return "\\/";
    case FormulaKind::Implication: return "=>";
    case FormulaKind::Difference: return "\\";
    default: return nullptr;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: return f.name();
    case FormulaKind::Top: return "top@" + f.name();
    case FormulaKind::Bottom: return "bot@" + f.name();
    case FormulaKind::Negation: return "~" + print_formula(f.child(0));
    case FormulaKind::Exists: return "exists[" + f.name() + "] " + print_formula(f.child(0));
    case FormulaKind::Forall: return "forall[" + f.name() + "] " + print_formula(f.child(0));
    case FormulaKind::Subst: return "subst[" + f.name() + "] " + print_formula(f.child(0));
    default:
      return "(" + print_formula(f.child(0)) + " " + binary_symbol(f.kind()) + " " +
             print_formula(f.child(1)) + ")";
  }
}

std::string print_constraint(const Constraint& c) {
  return "constraint " + c.name + " : " + print_formula(c.source) + " -[" + c.h_name + "]-> " +
         print_formula(c.target);
}

// ---------------------------------------------------------------------------
// Typing

Signature infer_signature(const Formula& f, const Schema& schema) {
  switch (f.kind()) {
    case FormulaKind::Atom: return schema.signature(f.name());
    case FormulaKind::Top:
    case FormulaKind::Bottom: return f.signature();
    case FormulaKind::Negation: return infer_signature(f.child(0), schema);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::Subst: {
      const auto& h = f.morphism();
      if (auto v = check_signature_morphism(h); !v)
        throw Error("SortMismatch", print_formula(f) + ": " + v.detail());
      Signature inner = infer_signature(f.child(0), schema);
      bool down = f.kind() != FormulaKind::Subst;
      const Signature& want = down ? h.target() : h.source();
      if (inner != want)
        throw Error("FlowMismatch", print_formula(f) + ": operand has " + to_string(inner) +
                                        ", " + f.name() + " expects " + to_string(want));
      return down ? h.source() : h.target();
    }
    default: {
      Signature a = infer_signature(f.child(0), schema);
      Signature b = infer_signature(f.child(1), schema);
      if (a != b)
        throw Error("FiberMismatch",
                    print_formula(f) + ": " + to_string(a) + " vs " + to_string(b));
      return a;
    }
  }
}

Verdict check_sequent(const Sequent& q, const Schema& schema) {
  try {
    Signature a = infer_signature(q.lhs, schema);
    Signature b = infer_signature(q.rhs, schema);
    if (a != b)
      return Verdict::fail("FiberMismatch", "sequent sides " + to_string(a) + " vs " +
                                                to_string(b));
  } catch (const Error& e) {
    return Verdict::fail(e.code(), e.detail());
  }
  return Verdict::ok();
}

Formula enfold_sequent(const Sequent& q) { return Formula::implication(q.lhs, q.rhs); }

Verdict check_constraint(const Constraint& c, const Schema& schema) {
  try {
    if (auto v = check_signature_morphism(c.h); !v) return v;
    Signature src = infer_signature(c.source, schema);
    Signature tgt = infer_signature(c.target, schema);
    if (src != c.h.source())
      return Verdict::fail("FlowMismatch", c.name + ": source formula has " + to_string(src) +
                                               ", " + c.h_name + " starts at " +
                                               to_string(c.h.source()));
    if (tgt != c.h.target())
      return Verdict::fail("FlowMismatch", c.name + ": target formula has " + to_string(tgt) +
                                               ", " + c.h_name + " ends at " +
                                               to_string(c.h.target()));
  } catch (const Error& e) {
    return Verdict::fail(e.code(), e.detail());
  }
  return Verdict::ok();
}

Formula enfold_constraint(const Constraint& c, Side side) {
  if (side == Side::Source)
    return Formula::implication(Formula::exists(c.h_name, c.h, c.target), c.source);
  return Formula::implication(c.target, Formula::subst(c.h_name, c.h, c.source));
}

}  // namespace fole
