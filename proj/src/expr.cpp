#include "sraw/expr.hpp"

#include <cassert>

namespace sraw {

namespace {

template <class LocEval, class FlagEval>
Val eval_impl(const RegStore& gamma, const ExprPtr& e, const LocEval& loc_val,
              const FlagEval& flag_is_r) {
  switch (e->op) {
    case ExprOp::Const:
      return e->value;
    case ExprOp::RegRef:
      return gamma.get(e->reg);
    case ExprOp::LocRef:
      return loc_val(e->loc);
    case ExprOp::RmwFlag:
      return flag_is_r(e->loc) ? 1 : 0;
    case ExprOp::Add:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) +
             eval_impl(gamma, e->b, loc_val, flag_is_r);
    case ExprOp::Sub:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) -
             eval_impl(gamma, e->b, loc_val, flag_is_r);
    case ExprOp::Mul:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) *
             eval_impl(gamma, e->b, loc_val, flag_is_r);
    case ExprOp::Eq:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) ==
                     eval_impl(gamma, e->b, loc_val, flag_is_r)
                 ? 1
                 : 0;
    case ExprOp::Ne:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) !=
                     eval_impl(gamma, e->b, loc_val, flag_is_r)
                 ? 1
                 : 0;
    case ExprOp::Lt:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) <
                     eval_impl(gamma, e->b, loc_val, flag_is_r)
                 ? 1
                 : 0;
    case ExprOp::Le:
      return eval_impl(gamma, e->a, loc_val, flag_is_r) <=
                     eval_impl(gamma, e->b, loc_val, flag_is_r)
                 ? 1
                 : 0;
    case ExprOp::Not:
      return truthy(eval_impl(gamma, e->a, loc_val, flag_is_r)) ? 0 : 1;
    case ExprOp::And:
      return truthy(eval_impl(gamma, e->a, loc_val, flag_is_r)) &&
                     truthy(eval_impl(gamma, e->b, loc_val, flag_is_r))
                 ? 1
                 : 0;
    case ExprOp::Or:
      return truthy(eval_impl(gamma, e->a, loc_val, flag_is_r)) ||
                     truthy(eval_impl(gamma, e->b, loc_val, flag_is_r))
                 ? 1
                 : 0;
  }
  return 0;
}

}  // namespace

Val eval_expr(const RegStore& gamma, const ExprPtr& e) {
  return eval_impl(
      gamma, e, [](Loc) -> Val { throw std::logic_error("location leaf in program expression"); },
      [](Loc) -> bool { throw std::logic_error("flag atom in program expression"); });
}

Val eval_ext_expr(const RegStore& gamma, const StoreEnv& store, const ExprPtr& e) {
  return eval_impl(
      gamma, e, [&](Loc l) { return store.loc_val(l); },
      [&](Loc l) { return store.flag_is_r(l); });
}

void collect_fv(const ExprPtr& e, FvSet& out) {
  switch (e->op) {
    case ExprOp::Const:
      return;
    case ExprOp::RegRef:
      out.regs.insert(e->reg);
      return;
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      out.locs.insert(e->loc);
      return;
    default:
      if (e->a) collect_fv(e->a, out);
      if (e->b) collect_fv(e->b, out);
  }
}

bool expr_mentions_loc(const ExprPtr& e, Loc l) {
  switch (e->op) {
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      return e->loc == l;
    default:
      return (e->a && expr_mentions_loc(e->a, l)) || (e->b && expr_mentions_loc(e->b, l));
  }
}

bool expr_has_loc_leaf(const ExprPtr& e) {
  switch (e->op) {
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      return true;
    default:
      return (e->a && expr_has_loc_leaf(e->a)) || (e->b && expr_has_loc_leaf(e->b));
  }
}

bool expr_has_rmw_atom(const ExprPtr& e, Loc l) {
  if (e->op == ExprOp::RmwFlag) return e->loc == l;
  return (e->a && expr_has_rmw_atom(e->a, l)) || (e->b && expr_has_rmw_atom(e->b, l));
}

ExprPtr subst_reg_expr(const ExprPtr& e, Reg r, const ExprPtr& repl) {
  switch (e->op) {
    case ExprOp::Const:
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      return e;
    case ExprOp::RegRef:
      return e->reg == r ? repl : e;
    default: {
      ExprPtr a = e->a ? subst_reg_expr(e->a, r, repl) : nullptr;
      ExprPtr b = e->b ? subst_reg_expr(e->b, r, repl) : nullptr;
      if (a == e->a && b == e->b) return e;
      auto out = std::make_shared<Expr>(*e);
      out->a = a;
      out->b = b;
      return out;
    }
  }
}

ExprPtr subst_reg_by_loc(const ExprPtr& e, Reg r, Loc l) {
  return subst_reg_expr(e, r, mk_loc(l));
}

ExprPtr subst_loc_by_reg(const ExprPtr& e, Loc l, Reg r) {
  switch (e->op) {
    case ExprOp::Const:
    case ExprOp::RegRef:
    case ExprOp::RmwFlag:
      return e;
    case ExprOp::LocRef:
      return e->loc == l ? mk_reg(r) : e;
    default: {
      ExprPtr a = e->a ? subst_loc_by_reg(e->a, l, r) : nullptr;
      ExprPtr b = e->b ? subst_loc_by_reg(e->b, l, r) : nullptr;
      if (a == e->a && b == e->b) return e;
      auto out = std::make_shared<Expr>(*e);
      out->a = a;
      out->b = b;
      return out;
    }
  }
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case ExprOp::Const:
      return a->value == b->value;
    case ExprOp::RegRef:
      return a->reg == b->reg;
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      return a->loc == b->loc;
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

std::size_t expr_hash(const ExprPtr& e) {
  std::size_t h = static_cast<std::size_t>(e->op) * 0x2545f4914f6cdd1dull;
  switch (e->op) {
    case ExprOp::Const:
      hash_mix(h, static_cast<std::size_t>(e->value));
      break;
    case ExprOp::RegRef:
      hash_mix(h, e->reg.v);
      break;
    case ExprOp::LocRef:
    case ExprOp::RmwFlag:
      hash_mix(h, e->loc.v);
      break;
    default:
      if (e->a) hash_mix(h, expr_hash(e->a));
      if (e->b) hash_mix(h, expr_hash(e->b));
  }
  return h;
}

namespace {

int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Or:
      return 1;
    case ExprOp::And:
      return 2;
    case ExprOp::Eq:
    case ExprOp::Ne:
    case ExprOp::Lt:
    case ExprOp::Le:
      return 3;
    case ExprOp::Add:
    case ExprOp::Sub:
      return 4;
    case ExprOp::Mul:
      return 5;
    case ExprOp::Not:
      return 6;
    default:
      return 7;
  }
}

void print(const ExprPtr& e, const SymbolTable& syms, int parent_prec, std::string& out) {
  int prec = precedence(e->op);
  const char* infix = nullptr;
  switch (e->op) {
    case ExprOp::Const:
      out += std::to_string(e->value);
      return;
    case ExprOp::RegRef:
      out += syms.name(e->reg);
      return;
    case ExprOp::LocRef:
      out += syms.name(e->loc);
      return;
    case ExprOp::RmwFlag:
      out += "R(" + syms.name(e->loc) + ")";
      return;
    case ExprOp::Not:
      out += "!";
      print(e->a, syms, prec, out);
      return;
    case ExprOp::Add:
      infix = " + ";
      break;
    case ExprOp::Sub:
      infix = " - ";
      break;
    case ExprOp::Mul:
      infix = " * ";
      break;
    case ExprOp::Eq:
      infix = " = ";
      break;
    case ExprOp::Ne:
      infix = " != ";
      break;
    case ExprOp::Lt:
      infix = " < ";
      break;
    case ExprOp::Le:
      infix = " <= ";
      break;
    case ExprOp::And:
      infix = " && ";
      break;
    case ExprOp::Or:
      infix = " || ";
      break;
    default:
      break;
  }
  bool need_paren = prec < parent_prec;
  if (need_paren) out += "(";
  print(e->a, syms, prec, out);
  out += infix;
  print(e->b, syms, prec + 1, out);
  if (need_paren) out += ")";
}

}  // namespace

std::string expr_to_string(const ExprPtr& e, const SymbolTable& syms) {
  std::string out;
  print(e, syms, 0, out);
  return out;
}

}  // namespace sraw
