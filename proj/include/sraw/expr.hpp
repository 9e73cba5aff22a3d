#ifndef SRAW_EXPR_HPP_
#define SRAW_EXPR_HPP_

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sraw/basics.hpp"

namespace sraw {

// One expression tree serves both program expressions (registers and values
// only) and the extended expressions of assertions (adding location leaves
// and R(x) flag atoms). Program contexts validate that no location leaf
// appears.
enum class ExprOp {
  Const,
  RegRef,
  LocRef,   // value of a location in a potential store
  RmwFlag,  // R(x): true iff the flag of x is R (not RMW)
  Add,
  Sub,
  Mul,
  Eq,
  Ne,
  Lt,
  Le,
  Not,
  And,
  Or,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op;
  Val value{};
  Reg reg{};
  Loc loc{};
  ExprPtr a, b;
};

inline ExprPtr mk_const(Val v) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Const;
  e->value = v;
  return e;
}
inline ExprPtr mk_reg(Reg r) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::RegRef;
  e->reg = r;
  return e;
}
inline ExprPtr mk_loc(Loc l) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::LocRef;
  e->loc = l;
  return e;
}
inline ExprPtr mk_rmw_flag(Loc l) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::RmwFlag;
  e->loc = l;
  return e;
}
inline ExprPtr mk_unary(ExprOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  return e;
}
inline ExprPtr mk_bin(ExprOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
inline ExprPtr mk_not(ExprPtr a) { return mk_unary(ExprOp::Not, std::move(a)); }
inline ExprPtr mk_true() { return mk_const(1); }
inline ExprPtr mk_false() { return mk_const(0); }

inline bool is_const_true(const ExprPtr& e) {
  return e->op == ExprOp::Const && truthy(e->value);
}

// Register store: total map Reg -> Val, zero by default. Kept in canonical
// form (sorted, no explicit zero entries) so it can key deduplication sets.
class RegStore {
 public:
  Val get(Reg r) const {
    auto it = find(r);
    return it == entries_.end() ? 0 : it->second;
  }

  RegStore set(Reg r, Val v) const {
    RegStore out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), r,
                               [](const auto& p, Reg q) { return p.first < q; });
    if (it != out.entries_.end() && it->first == r) {
      if (v == 0)
        out.entries_.erase(it);
      else
        it->second = v;
    } else if (v != 0) {
      out.entries_.insert(it, {r, v});
    }
    return out;
  }

  const std::vector<std::pair<Reg, Val>>& entries() const { return entries_; }

  friend bool operator==(const RegStore& a, const RegStore& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const RegStore& a, const RegStore& b) {
    return std::lexicographical_compare(
        a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
        [](const auto& x, const auto& y) {
          return x.first < y.first || (x.first == y.first && x.second < y.second);
        });
  }

  std::size_t hash() const {
    std::size_t h = 0x51ab;
    for (const auto& [r, v] : entries_) {
      hash_mix(h, r.v);
      hash_mix(h, static_cast<std::size_t>(v));
    }
    return h;
  }

 private:
  std::vector<std::pair<Reg, Val>>::const_iterator find(Reg r) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), r,
                               [](const auto& p, Reg q) { return p.first < q; });
    if (it != entries_.end() && it->first == r) return it;
    return entries_.end();
  }
  std::vector<std::pair<Reg, Val>> entries_;
};

// Evaluation over a register store alone; location leaves are rejected by
// callers that require program expressions, and evaluate through the
// StoreEnv overload otherwise.
Val eval_expr(const RegStore& gamma, const ExprPtr& e);

// Extended evaluation: location leaves read from a potential store exposed
// through this interface.
struct StoreEnv {
  virtual ~StoreEnv() = default;
  virtual Val loc_val(Loc l) const = 0;
  virtual bool flag_is_r(Loc l) const = 0;
};

Val eval_ext_expr(const RegStore& gamma, const StoreEnv& store, const ExprPtr& e);

struct FvSet {
  std::set<Reg> regs;
  std::set<Loc> locs;
  std::set<Tid> tids;

  void merge(const FvSet& o) {
    regs.insert(o.regs.begin(), o.regs.end());
    locs.insert(o.locs.begin(), o.locs.end());
    tids.insert(o.tids.begin(), o.tids.end());
  }
};

void collect_fv(const ExprPtr& e, FvSet& out);
bool expr_mentions_loc(const ExprPtr& e, Loc l);
bool expr_has_loc_leaf(const ExprPtr& e);
bool expr_has_rmw_atom(const ExprPtr& e, Loc l);

// Substitutions used by the assignment axioms and the load shift rule.
ExprPtr subst_reg_expr(const ExprPtr& e, Reg r, const ExprPtr& repl);
ExprPtr subst_reg_by_loc(const ExprPtr& e, Reg r, Loc l);
ExprPtr subst_loc_by_reg(const ExprPtr& e, Loc l, Reg r);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::size_t expr_hash(const ExprPtr& e);

std::string expr_to_string(const ExprPtr& e, const SymbolTable& syms);

}  // namespace sraw

#endif  // SRAW_EXPR_HPP_
