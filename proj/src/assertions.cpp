#include "sraw/assertions.hpp"

#include <algorithm>

namespace sraw {

IntervalPtr mk_bracket(ExprPtr e) {
  auto i = std::make_shared<Interval>();
  i->kind = IntervalKind::Bracket;
  i->expr = std::move(e);
  return i;
}
IntervalPtr mk_ichop(IntervalPtr a, IntervalPtr b) {
  auto i = std::make_shared<Interval>();
  i->kind = IntervalKind::Chop;
  i->a = std::move(a);
  i->b = std::move(b);
  return i;
}
IntervalPtr mk_iand(IntervalPtr a, IntervalPtr b) {
  auto i = std::make_shared<Interval>();
  i->kind = IntervalKind::And;
  i->a = std::move(a);
  i->b = std::move(b);
  return i;
}
IntervalPtr mk_ior(IntervalPtr a, IntervalPtr b) {
  auto i = std::make_shared<Interval>();
  i->kind = IntervalKind::Or;
  i->a = std::move(a);
  i->b = std::move(b);
  return i;
}

AssertPtr mk_pot(Tid t, IntervalPtr i) {
  auto a = std::make_shared<Assertion>();
  a->kind = AssertKind::Pot;
  a->tid = t;
  a->ival = std::move(i);
  return a;
}
AssertPtr mk_expr_assert(ExprPtr e) {
  auto a = std::make_shared<Assertion>();
  a->kind = AssertKind::Expr;
  a->expr = std::move(e);
  return a;
}
AssertPtr mk_and(AssertPtr a, AssertPtr b) {
  auto c = std::make_shared<Assertion>();
  c->kind = AssertKind::And;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}
AssertPtr mk_or(AssertPtr a, AssertPtr b) {
  auto c = std::make_shared<Assertion>();
  c->kind = AssertKind::Or;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}
AssertPtr mk_implies(ExprPtr e, AssertPtr a) {
  return mk_or(mk_expr_assert(mk_not(std::move(e))), std::move(a));
}
AssertPtr mk_true_assert() { return mk_expr_assert(mk_true()); }

bool sat_interval(const LocDomain& dom, const RegStore& gamma, std::span<const PotStore> slice,
                  const IntervalPtr& i) {
  switch (i->kind) {
    case IntervalKind::Bracket:
      for (const PotStore& s : slice) {
        PotStoreEnv env(dom, s);
        if (!truthy(eval_ext_expr(gamma, env, i->expr))) return false;
      }
      return true;
    case IntervalKind::Chop:
      for (std::size_t k = 0; k <= slice.size(); ++k)
        if (sat_interval(dom, gamma, slice.subspan(0, k), i->a) &&
            sat_interval(dom, gamma, slice.subspan(k), i->b))
          return true;
      return false;
    case IntervalKind::And:
      return sat_interval(dom, gamma, slice, i->a) && sat_interval(dom, gamma, slice, i->b);
    case IntervalKind::Or:
      return sat_interval(dom, gamma, slice, i->a) || sat_interval(dom, gamma, slice, i->b);
  }
  return false;
}

bool sat_assertion(const LocDomain& dom, const RegStore& gamma, const PotentialMapping& d,
                   const AssertPtr& phi, SatStats* stats) {
  switch (phi->kind) {
    case AssertKind::Pot: {
      auto it = d.find(phi->tid);
      if (it == d.end()) {
        if (stats) ++stats->pot_on_absent_thread;
        return false;
      }
      for (const StoreList& l : it->second)
        if (!sat_interval(dom, gamma, std::span<const PotStore>(l), phi->ival)) return false;
      return true;
    }
    case AssertKind::Expr:
      return truthy(eval_expr(gamma, phi->expr));
    case AssertKind::And:
      return sat_assertion(dom, gamma, d, phi->a, stats) &&
             sat_assertion(dom, gamma, d, phi->b, stats);
    case AssertKind::Or:
      return sat_assertion(dom, gamma, d, phi->a, stats) ||
             sat_assertion(dom, gamma, d, phi->b, stats);
  }
  return false;
}

namespace {

void collect_interval_fv(const IntervalPtr& i, FvSet& out) {
  if (i->kind == IntervalKind::Bracket)
    collect_fv(i->expr, out);
  else {
    collect_interval_fv(i->a, out);
    if (i->b) collect_interval_fv(i->b, out);
  }
}

void collect_assert_fv(const AssertPtr& a, FvSet& out) {
  switch (a->kind) {
    case AssertKind::Pot:
      out.tids.insert(a->tid);
      collect_interval_fv(a->ival, out);
      break;
    case AssertKind::Expr:
      collect_fv(a->expr, out);
      break;
    default:
      collect_assert_fv(a->a, out);
      collect_assert_fv(a->b, out);
  }
}

}  // namespace

FvSet fv(const IntervalPtr& i) {
  FvSet out;
  collect_interval_fv(i, out);
  return out;
}

FvSet fv(const AssertPtr& phi) {
  FvSet out;
  collect_assert_fv(phi, out);
  return out;
}

bool has_rmw_atom(const IntervalPtr& i, Loc x) {
  if (i->kind == IntervalKind::Bracket) return expr_has_rmw_atom(i->expr, x);
  return has_rmw_atom(i->a, x) || (i->b && has_rmw_atom(i->b, x));
}

bool has_rmw_atom(const AssertPtr& phi, Loc x) {
  switch (phi->kind) {
    case AssertKind::Pot:
      return has_rmw_atom(phi->ival, x);
    case AssertKind::Expr:
      return expr_has_rmw_atom(phi->expr, x);
    default:
      return has_rmw_atom(phi->a, x) || has_rmw_atom(phi->b, x);
  }
}

bool interval_mentions_loc(const IntervalPtr& i, Loc x) {
  if (i->kind == IntervalKind::Bracket) return expr_mentions_loc(i->expr, x);
  return interval_mentions_loc(i->a, x) || (i->b && interval_mentions_loc(i->b, x));
}

IntervalPtr subst_interval_reg(const IntervalPtr& i, Reg r, const ExprPtr& repl) {
  if (i->kind == IntervalKind::Bracket) {
    ExprPtr e = subst_reg_expr(i->expr, r, repl);
    return e == i->expr ? i : mk_bracket(e);
  }
  IntervalPtr a = subst_interval_reg(i->a, r, repl);
  IntervalPtr b = i->b ? subst_interval_reg(i->b, r, repl) : nullptr;
  if (a == i->a && b == i->b) return i;
  auto out = std::make_shared<Interval>(*i);
  out->a = a;
  out->b = b;
  return out;
}

AssertPtr subst_assert_reg(const AssertPtr& phi, Reg r, const ExprPtr& repl) {
  switch (phi->kind) {
    case AssertKind::Pot: {
      IntervalPtr i = subst_interval_reg(phi->ival, r, repl);
      return i == phi->ival ? phi : mk_pot(phi->tid, i);
    }
    case AssertKind::Expr: {
      ExprPtr e = subst_reg_expr(phi->expr, r, repl);
      return e == phi->expr ? phi : mk_expr_assert(e);
    }
    default: {
      AssertPtr a = subst_assert_reg(phi->a, r, repl);
      AssertPtr b = subst_assert_reg(phi->b, r, repl);
      if (a == phi->a && b == phi->b) return phi;
      auto out = std::make_shared<Assertion>(*phi);
      out->a = a;
      out->b = b;
      return out;
    }
  }
}

bool interval_equal(const IntervalPtr& a, const IntervalPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == IntervalKind::Bracket) return expr_equal(a->expr, b->expr);
  return interval_equal(a->a, b->a) && interval_equal(a->b, b->b);
}

bool assert_equal(const AssertPtr& a, const AssertPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AssertKind::Pot:
      return a->tid == b->tid && interval_equal(a->ival, b->ival);
    case AssertKind::Expr:
      return expr_equal(a->expr, b->expr);
    default:
      return assert_equal(a->a, b->a) && assert_equal(a->b, b->b);
  }
}

std::string interval_to_string(const IntervalPtr& i, const SymbolTable& syms) {
  switch (i->kind) {
    case IntervalKind::Bracket:
      return "[" + expr_to_string(i->expr, syms) + "]";
    case IntervalKind::Chop:
      return interval_to_string(i->a, syms) + " ; " + interval_to_string(i->b, syms);
    case IntervalKind::And: {
      return "(" + interval_to_string(i->a, syms) + " && " + interval_to_string(i->b, syms) + ")";
    }
    case IntervalKind::Or:
      return "(" + interval_to_string(i->a, syms) + " || " + interval_to_string(i->b, syms) + ")";
  }
  return {};
}

std::string assert_to_string(const AssertPtr& a, const SymbolTable& syms) {
  switch (a->kind) {
    case AssertKind::Pot:
      return syms.name(a->tid) + " |= " + interval_to_string(a->ival, syms);
    case AssertKind::Expr:
      return expr_to_string(a->expr, syms);
    case AssertKind::And:
      return "(" + assert_to_string(a->a, syms) + " && " + assert_to_string(a->b, syms) + ")";
    case AssertKind::Or:
      return "(" + assert_to_string(a->a, syms) + " || " + assert_to_string(a->b, syms) + ")";
  }
  return {};
}

namespace {

// canonical print-key based normalization for AC comparison
std::string norm_key(const AssertPtr& a);

void flatten(const AssertPtr& a, AssertKind k, std::vector<AssertPtr>& out) {
  if (a->kind == k) {
    flatten(a->a, k, out);
    flatten(a->b, k, out);
  } else {
    out.push_back(a);
  }
}

void iflatten(const IntervalPtr& i, IntervalKind k, std::vector<IntervalPtr>& out) {
  if (i->kind == k) {
    iflatten(i->a, k, out);
    iflatten(i->b, k, out);
  } else {
    out.push_back(i);
  }
}

std::size_t ivkey(const IntervalPtr& i) {
  switch (i->kind) {
    case IntervalKind::Bracket: {
      std::size_t h = 0xb4ac;
      hash_mix(h, expr_hash(i->expr));
      return h;
    }
    case IntervalKind::Chop: {
      std::size_t h = 0xc409;
      hash_mix(h, ivkey(i->a));
      hash_mix(h, ivkey(i->b));
      return h;
    }
    case IntervalKind::And:
    case IntervalKind::Or: {
      std::vector<IntervalPtr> parts;
      iflatten(i, i->kind, parts);
      std::vector<std::size_t> keys;
      for (const auto& p : parts) keys.push_back(ivkey(p));
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::size_t h = i->kind == IntervalKind::And ? 0xa4d : 0x0a;
      for (std::size_t k : keys) hash_mix(h, k);
      return h;
    }
  }
  return 0;
}

std::string norm_key(const AssertPtr& a) {
  switch (a->kind) {
    case AssertKind::Pot:
      return "P" + std::to_string(a->tid.v) + ":" + std::to_string(ivkey(a->ival));
    case AssertKind::Expr:
      return "E" + std::to_string(expr_hash(a->expr));
    case AssertKind::And:
    case AssertKind::Or: {
      std::vector<AssertPtr> parts;
      flatten(a, a->kind, parts);
      std::vector<std::string> keys;
      for (const auto& p : parts) keys.push_back(norm_key(p));
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::string out = a->kind == AssertKind::And ? "A(" : "O(";
      for (const auto& k : keys) out += k + ",";
      return out + ")";
    }
  }
  return {};
}

}  // namespace

bool assert_equal_ac(const AssertPtr& a, const AssertPtr& b) {
  if (assert_equal(a, b)) return true;
  return norm_key(a) == norm_key(b);
}

namespace {

void dnf_interval_merge(std::map<Tid, IntervalPtr>& pots, Tid t, const IntervalPtr& i) {
  auto it = pots.find(t);
  if (it == pots.end())
    pots.emplace(t, i);
  else
    it->second = mk_iand(it->second, i);
}

}  // namespace

std::vector<Disjunct> to_dnf(const AssertPtr& phi) {
  switch (phi->kind) {
    case AssertKind::Pot: {
      Disjunct d;
      d.pots.emplace(phi->tid, phi->ival);
      return {d};
    }
    case AssertKind::Expr: {
      Disjunct d;
      d.exprs.push_back(phi->expr);
      return {d};
    }
    case AssertKind::Or: {
      auto l = to_dnf(phi->a);
      auto r = to_dnf(phi->b);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case AssertKind::And: {
      auto l = to_dnf(phi->a);
      auto r = to_dnf(phi->b);
      std::vector<Disjunct> out;
      for (const Disjunct& x : l)
        for (const Disjunct& y : r) {
          Disjunct d = x;
          d.exprs.insert(d.exprs.end(), y.exprs.begin(), y.exprs.end());
          for (const auto& [t, i] : y.pots) dnf_interval_merge(d.pots, t, i);
          out.push_back(std::move(d));
        }
      return out;
    }
  }
  return {};
}

bool assertion_wf_sra(const AssertPtr& phi, std::string* why) {
  switch (phi->kind) {
    case AssertKind::Pot:
      return true;
    case AssertKind::Expr:
      if (expr_has_loc_leaf(phi->expr)) {
        if (why) *why = "location atom outside a potential assertion";
        return false;
      }
      return true;
    default:
      return assertion_wf_sra(phi->a, why) && assertion_wf_sra(phi->b, why);
  }
}

}  // namespace sraw
