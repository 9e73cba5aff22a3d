#include "sraw/opsem.hpp"

namespace sraw {

std::string label_to_string(const OptLabel& l, const SymbolTable& syms) {
  if (!l) return "eps";
  switch (l->kind) {
    case LabelKind::Read:
      return "R(" + syms.name(l->loc) + "," + std::to_string(l->vr) + ")";
    case LabelKind::Write:
      return "W(" + syms.name(l->loc) + "," + std::to_string(l->vw) + ")";
    case LabelKind::Rmw:
      return "U(" + syms.name(l->loc) + "," + std::to_string(l->vr) + "," +
             std::to_string(l->vw) + ")";
    case LabelKind::Fork:
      return "FORK(" + syms.name(l->t1) + "," + syms.name(l->t2) + ")";
    case LabelKind::Join:
      return "JOIN(" + syms.name(l->t1) + "," + syms.name(l->t2) + ")";
  }
  return {};
}

namespace {

RegStore apply_aux(const InstrCmd& ic, RegStore gamma) {
  for (const auto& [r, e] : ic.aux) gamma = gamma.set(r, eval_expr(gamma, e));
  return gamma;
}

std::vector<PrimStep> prim_step_impl(const InstrCmd& ic, const RegStore& gamma,
                                     const ReadValueFn& reads, const ReadValueFn& rmw_reads) {
  std::vector<PrimStep> out;
  const PrimCmd& p = ic.prim;
  switch (p.kind) {
    case PrimKind::Assign: {
      RegStore g = gamma.set(p.reg, eval_expr(gamma, p.expr));
      out.push_back({std::nullopt, apply_aux(ic, g)});
      break;
    }
    case PrimKind::Store: {
      Val v = eval_expr(gamma, p.expr);
      out.push_back({Label::write(p.loc, v), apply_aux(ic, gamma)});
      break;
    }
    case PrimKind::Load: {
      for (Val v : reads(p.loc)) {
        RegStore g = gamma.set(p.reg, v);
        out.push_back({Label::read(p.loc, v), apply_aux(ic, g)});
      }
      break;
    }
    case PrimKind::Swap: {
      Val vw = eval_expr(gamma, p.expr);
      for (Val vr : rmw_reads(p.loc))
        out.push_back({Label::rmw(p.loc, vr, vw), apply_aux(ic, gamma)});
      break;
    }
  }
  return out;
}

std::vector<CmdStep> cmd_step_impl(const CmdPtr& c, const RegStore& gamma,
                                   const ReadValueFn& reads, const ReadValueFn& rmw_reads) {
  std::vector<CmdStep> out;
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Deadend:
      break;  // no steps; termination is judged at the pool level
    case CmdKind::Instr:
      for (auto& ps : prim_step_impl(c->instr, gamma, reads, rmw_reads))
        out.push_back({ps.label, mk_skip(), ps.gamma});
      break;
    case CmdKind::Seq:
      if (is_skip(c->c1)) {
        out.push_back({std::nullopt, c->c2, gamma});
      } else {
        for (auto& cs : cmd_step_impl(c->c1, gamma, reads, rmw_reads))
          out.push_back({cs.label, mk_seq(cs.cmd, c->c2), cs.gamma});
      }
      break;
    case CmdKind::If: {
      bool taken = truthy(eval_expr(gamma, c->cond));
      out.push_back({std::nullopt, taken ? c->c1 : c->c2, gamma});
      break;
    }
    case CmdKind::While: {
      CmdPtr unfolded = mk_if(c->cond, mk_seq(c->c1, c), mk_skip(), c->pos);
      out.push_back({std::nullopt, unfolded, gamma});
      break;
    }
    case CmdKind::Par:
      break;  // handled by the pool-level fork rule
  }
  return out;
}

std::vector<PoolStep> pool_step_impl(const CommandPool& pool, const RegStore& gamma,
                                     const PoolReadFn& reads, const PoolReadFn& rmw_reads) {
  std::vector<PoolStep> out;
  for (const auto& [tid, cmd] : pool) {
    auto rd = [&, t = tid](Loc x) { return reads(t, x); };
    auto rmw = [&, t = tid](Loc x) { return rmw_reads(t, x); };
    // thread-local steps
    for (auto& cs : cmd_step_impl(cmd, gamma, rd, rmw)) {
      CommandPool next = pool;
      next[tid] = cs.cmd;
      out.push_back({tid, cs.label, std::move(next), cs.gamma});
    }
    // fork: the thread's command is a parallel composition and the child ids
    // are fresh in the pool
    if (cmd->kind == CmdKind::Par) {
      if (pool.count(cmd->t1) == 0 && pool.count(cmd->t2) == 0) {
        CommandPool next = pool;
        next[cmd->t1] = cmd->c1;
        next[cmd->t2] = cmd->c2;
        out.push_back({tid, Label::fork(cmd->t1, cmd->t2), std::move(next), gamma});
      }
      // join: both children ran to skip
      auto i1 = pool.find(cmd->t1);
      auto i2 = pool.find(cmd->t2);
      if (i1 != pool.end() && i2 != pool.end() && is_skip(i1->second) && is_skip(i2->second)) {
        CommandPool next = pool;
        next.erase(cmd->t1);
        next.erase(cmd->t2);
        next[tid] = mk_skip();
        out.push_back({tid, Label::join(cmd->t1, cmd->t2), std::move(next), gamma});
      }
    }
  }
  return out;
}

ReadValueFn domain_fn(const ValueDomain& domain) {
  return [&domain](Loc) { return domain; };
}

}  // namespace

std::vector<PrimStep> prim_step(const InstrCmd& ic, const RegStore& gamma,
                                const ValueDomain& domain) {
  return prim_step_impl(ic, gamma, domain_fn(domain), domain_fn(domain));
}

std::vector<CmdStep> cmd_step(const CmdPtr& c, const RegStore& gamma, const ValueDomain& domain) {
  return cmd_step_impl(c, gamma, domain_fn(domain), domain_fn(domain));
}

std::vector<PoolStep> pool_step(const CommandPool& pool, const RegStore& gamma,
                                const ValueDomain& domain) {
  auto fn = [&domain](Tid, Loc) { return domain; };
  return pool_step_impl(pool, gamma, fn, fn);
}

std::vector<PrimStep> prim_step_with(const InstrCmd& ic, const RegStore& gamma,
                                     const ReadValueFn& reads, const ReadValueFn& rmw_reads) {
  return prim_step_impl(ic, gamma, reads, rmw_reads);
}

std::vector<PoolStep> pool_step_with(const CommandPool& pool, const RegStore& gamma,
                                     const PoolReadFn& reads, const PoolReadFn& rmw_reads) {
  return pool_step_impl(pool, gamma, reads, rmw_reads);
}

}  // namespace sraw
