#ifndef SRAW_ASSERTIONS_HPP_
#define SRAW_ASSERTIONS_HPP_

#include <span>

#include "sraw/potential.hpp"

namespace sraw {

// Interval assertions over store lists: bracketed extended expressions,
// chop, conjunction, disjunction.
enum class IntervalKind { Bracket, Chop, And, Or };

struct Interval;
using IntervalPtr = std::shared_ptr<const Interval>;

struct Interval {
  IntervalKind kind;
  ExprPtr expr;       // Bracket
  IntervalPtr a, b;   // Chop / And / Or
};

IntervalPtr mk_bracket(ExprPtr e);
IntervalPtr mk_ichop(IntervalPtr a, IntervalPtr b);
IntervalPtr mk_iand(IntervalPtr a, IntervalPtr b);
IntervalPtr mk_ior(IntervalPtr a, IntervalPtr b);

// Assertions: per-thread potential assertions, register expressions, and
// their conjunctions/disjunctions.
enum class AssertKind { Pot, Expr, And, Or };

struct Assertion;
using AssertPtr = std::shared_ptr<const Assertion>;

struct Assertion {
  AssertKind kind;
  Tid tid{};          // Pot
  IntervalPtr ival;   // Pot
  ExprPtr expr;       // Expr
  AssertPtr a, b;     // And / Or
};

AssertPtr mk_pot(Tid t, IntervalPtr i);
AssertPtr mk_expr_assert(ExprPtr e);
AssertPtr mk_and(AssertPtr a, AssertPtr b);
AssertPtr mk_or(AssertPtr a, AssertPtr b);
AssertPtr mk_implies(ExprPtr e, AssertPtr a);  // sugar: !e \/ a
AssertPtr mk_true_assert();

// A store sequence (possibly empty slice of a list) satisfies an interval
// assertion: brackets hold pointwise, chop splits the slice, with both sides
// possibly empty.
bool sat_interval(const LocDomain& dom, const RegStore& gamma, std::span<const PotStore> slice,
                  const IntervalPtr& i);

struct SatStats {
  std::size_t pot_on_absent_thread = 0;  // pot(t, I) evaluated with t not live
};

// Assertion satisfaction over (register store, potential mapping). A
// potential assertion about a thread outside the mapping's domain is false.
bool sat_assertion(const LocDomain& dom, const RegStore& gamma, const PotentialMapping& d,
                   const AssertPtr& phi, SatStats* stats = nullptr);

FvSet fv(const IntervalPtr& i);
FvSet fv(const AssertPtr& phi);
bool has_rmw_atom(const IntervalPtr& i, Loc x);
bool has_rmw_atom(const AssertPtr& phi, Loc x);
bool interval_mentions_loc(const IntervalPtr& i, Loc x);

AssertPtr subst_assert_reg(const AssertPtr& phi, Reg r, const ExprPtr& repl);
IntervalPtr subst_interval_reg(const IntervalPtr& i, Reg r, const ExprPtr& repl);

bool interval_equal(const IntervalPtr& a, const IntervalPtr& b);
bool assert_equal(const AssertPtr& a, const AssertPtr& b);
// Equality modulo flattening, sorting and deduplication of nested And/Or at
// both levels; chop stays structural.
bool assert_equal_ac(const AssertPtr& a, const AssertPtr& b);

std::string interval_to_string(const IntervalPtr& i, const SymbolTable& syms);
std::string assert_to_string(const AssertPtr& a, const SymbolTable& syms);

// Disjunctive normal form at the assertion level: each disjunct is a
// conjunction of register expressions and per-thread interval assertions
// (several pot-assertions on one thread merge into one interval conjunction).
struct Disjunct {
  std::vector<ExprPtr> exprs;
  std::map<Tid, IntervalPtr> pots;
};
std::vector<Disjunct> to_dnf(const AssertPtr& phi);

// Validation for the SRA assertion grammar: register expressions at the
// assertion level must not mention locations or flags.
bool assertion_wf_sra(const AssertPtr& phi, std::string* why = nullptr);

}  // namespace sraw

#endif  // SRAW_ASSERTIONS_HPP_
