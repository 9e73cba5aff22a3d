#include "sraw/ast.hpp"

#include <set>
#include <stdexcept>

namespace sraw {

namespace {

std::size_t compute_hash(const Cmd& c) {
  std::size_t h = static_cast<std::size_t>(c.kind) * 0x9e3779b97f4a7c15ull;
  switch (c.kind) {
    case CmdKind::Instr: {
      hash_mix(h, static_cast<std::size_t>(c.instr.prim.kind));
      hash_mix(h, c.instr.prim.reg.v);
      hash_mix(h, c.instr.prim.loc.v);
      if (c.instr.prim.expr) hash_mix(h, expr_hash(c.instr.prim.expr));
      for (const auto& [r, e] : c.instr.aux) {
        hash_mix(h, r.v);
        hash_mix(h, expr_hash(e));
      }
      break;
    }
    case CmdKind::Skip:
    case CmdKind::Deadend:
      break;
    case CmdKind::Seq:
      hash_mix(h, c.c1->cached_hash);
      hash_mix(h, c.c2->cached_hash);
      break;
    case CmdKind::If:
      hash_mix(h, expr_hash(c.cond));
      hash_mix(h, c.c1->cached_hash);
      hash_mix(h, c.c2->cached_hash);
      break;
    case CmdKind::While:
      hash_mix(h, expr_hash(c.cond));
      hash_mix(h, c.c1->cached_hash);
      break;
    case CmdKind::Par:
      hash_mix(h, c.t1.v);
      hash_mix(h, c.t2.v);
      hash_mix(h, c.c1->cached_hash);
      hash_mix(h, c.c2->cached_hash);
      break;
  }
  return h;
}

CmdPtr finish(std::shared_ptr<Cmd> c) {
  c->cached_hash = compute_hash(*c);
  return c;
}

}  // namespace

CmdPtr mk_skip() {
  static CmdPtr skip = [] {
    auto c = std::make_shared<Cmd>();
    c->kind = CmdKind::Skip;
    return finish(c);
  }();
  return skip;
}

CmdPtr mk_deadend() {
  static CmdPtr dead = [] {
    auto c = std::make_shared<Cmd>();
    c->kind = CmdKind::Deadend;
    return finish(c);
  }();
  return dead;
}

CmdPtr mk_instr(InstrCmd ic, SourcePos pos) {
  auto c = std::make_shared<Cmd>();
  c->kind = CmdKind::Instr;
  c->instr = std::move(ic);
  c->pos = pos;
  return finish(c);
}

CmdPtr mk_prim(PrimCmd pc, SourcePos pos) { return mk_instr(InstrCmd{std::move(pc), {}}, pos); }

CmdPtr mk_seq(CmdPtr a, CmdPtr b) {
  auto c = std::make_shared<Cmd>();
  c->kind = CmdKind::Seq;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return finish(c);
}

CmdPtr mk_if(ExprPtr cond, CmdPtr then_c, CmdPtr else_c, SourcePos pos) {
  auto c = std::make_shared<Cmd>();
  c->kind = CmdKind::If;
  c->cond = std::move(cond);
  c->c1 = std::move(then_c);
  c->c2 = std::move(else_c);
  c->pos = pos;
  return finish(c);
}

CmdPtr mk_while(ExprPtr cond, CmdPtr body, SourcePos pos) {
  auto c = std::make_shared<Cmd>();
  c->kind = CmdKind::While;
  c->cond = std::move(cond);
  c->c1 = std::move(body);
  c->pos = pos;
  return finish(c);
}

CmdPtr mk_par(Tid t1, CmdPtr c1, Tid t2, CmdPtr c2, SourcePos pos) {
  auto c = std::make_shared<Cmd>();
  c->kind = CmdKind::Par;
  c->t1 = t1;
  c->t2 = t2;
  c->c1 = std::move(c1);
  c->c2 = std::move(c2);
  c->pos = pos;
  return finish(c);
}

bool is_skip(const CmdPtr& c) { return c->kind == CmdKind::Skip; }

bool cmd_equal(const CmdPtr& a, const CmdPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->cached_hash != b->cached_hash) return false;
  switch (a->kind) {
    case CmdKind::Skip:
    case CmdKind::Deadend:
      return true;
    case CmdKind::Instr: {
      const auto& p = a->instr.prim;
      const auto& q = b->instr.prim;
      if (p.kind != q.kind || p.reg != q.reg || p.loc != q.loc) return false;
      if ((p.expr == nullptr) != (q.expr == nullptr)) return false;
      if (p.expr && !expr_equal(p.expr, q.expr)) return false;
      if (a->instr.aux.size() != b->instr.aux.size()) return false;
      for (std::size_t i = 0; i < a->instr.aux.size(); ++i) {
        if (a->instr.aux[i].first != b->instr.aux[i].first) return false;
        if (!expr_equal(a->instr.aux[i].second, b->instr.aux[i].second)) return false;
      }
      return true;
    }
    case CmdKind::Seq:
      return cmd_equal(a->c1, b->c1) && cmd_equal(a->c2, b->c2);
    case CmdKind::If:
      return expr_equal(a->cond, b->cond) && cmd_equal(a->c1, b->c1) && cmd_equal(a->c2, b->c2);
    case CmdKind::While:
      return expr_equal(a->cond, b->cond) && cmd_equal(a->c1, b->c1);
    case CmdKind::Par:
      return a->t1 == b->t1 && a->t2 == b->t2 && cmd_equal(a->c1, b->c1) &&
             cmd_equal(a->c2, b->c2);
  }
  return false;
}

std::size_t cmd_hash(const CmdPtr& c) { return c->cached_hash; }

void collect_tids(const CmdPtr& c, std::set<Tid>& out) {
  switch (c->kind) {
    case CmdKind::Par:
      out.insert(c->t1);
      out.insert(c->t2);
      collect_tids(c->c1, out);
      collect_tids(c->c2, out);
      break;
    case CmdKind::Seq:
    case CmdKind::If:
      collect_tids(c->c1, out);
      collect_tids(c->c2, out);
      break;
    case CmdKind::While:
      collect_tids(c->c1, out);
      break;
    default:
      break;
  }
}

void collect_cmd_fv(const CmdPtr& c, FvSet& out) {
  switch (c->kind) {
    case CmdKind::Instr: {
      const auto& p = c->instr.prim;
      switch (p.kind) {
        case PrimKind::Assign:
          out.regs.insert(p.reg);
          collect_fv(p.expr, out);
          break;
        case PrimKind::Store:
          out.locs.insert(p.loc);
          collect_fv(p.expr, out);
          break;
        case PrimKind::Load:
          out.regs.insert(p.reg);
          out.locs.insert(p.loc);
          break;
        case PrimKind::Swap:
          out.locs.insert(p.loc);
          collect_fv(p.expr, out);
          break;
      }
      for (const auto& [r, e] : c->instr.aux) {
        out.regs.insert(r);
        collect_fv(e, out);
      }
      break;
    }
    case CmdKind::Skip:
    case CmdKind::Deadend:
      break;
    case CmdKind::Seq:
    case CmdKind::If:
      if (c->cond) collect_fv(c->cond, out);
      collect_cmd_fv(c->c1, out);
      collect_cmd_fv(c->c2, out);
      break;
    case CmdKind::While:
      collect_fv(c->cond, out);
      collect_cmd_fv(c->c1, out);
      break;
    case CmdKind::Par:
      out.tids.insert(c->t1);
      out.tids.insert(c->t2);
      collect_cmd_fv(c->c1, out);
      collect_cmd_fv(c->c2, out);
      break;
  }
}

void collect_written_regs(const CmdPtr& c, std::set<Reg>& out) {
  switch (c->kind) {
    case CmdKind::Instr: {
      const auto& p = c->instr.prim;
      if (p.kind == PrimKind::Assign || p.kind == PrimKind::Load) out.insert(p.reg);
      for (const auto& [r, e] : c->instr.aux) out.insert(r);
      break;
    }
    case CmdKind::Seq:
    case CmdKind::If:
    case CmdKind::Par:
      collect_written_regs(c->c1, out);
      collect_written_regs(c->c2, out);
      break;
    case CmdKind::While:
      collect_written_regs(c->c1, out);
      break;
    default:
      break;
  }
}

namespace {
void collect_expr_consts(const ExprPtr& e, std::set<Val>& out) {
  if (e->op == ExprOp::Const) out.insert(e->value);
  if (e->a) collect_expr_consts(e->a, out);
  if (e->b) collect_expr_consts(e->b, out);
}
}  // namespace

void collect_store_values(const CmdPtr& c, std::set<Val>& out) {
  switch (c->kind) {
    case CmdKind::Instr: {
      const auto& p = c->instr.prim;
      if (p.kind == PrimKind::Store || p.kind == PrimKind::Swap) collect_expr_consts(p.expr, out);
      break;
    }
    case CmdKind::Seq:
    case CmdKind::If:
    case CmdKind::Par:
      collect_store_values(c->c1, out);
      collect_store_values(c->c2, out);
      break;
    case CmdKind::While:
      collect_store_values(c->c1, out);
      break;
    default:
      break;
  }
}

std::size_t count_write_instrs(const CmdPtr& c) {
  switch (c->kind) {
    case CmdKind::Instr: {
      auto k = c->instr.prim.kind;
      return (k == PrimKind::Store || k == PrimKind::Swap) ? 1 : 0;
    }
    case CmdKind::Seq:
    case CmdKind::If:
    case CmdKind::Par:
      return count_write_instrs(c->c1) + count_write_instrs(c->c2);
    case CmdKind::While:
      return count_write_instrs(c->c1);
    default:
      return 0;
  }
}

bool well_formed(const CmdPtr& c) {
  switch (c->kind) {
    case CmdKind::Instr:
    case CmdKind::Skip:
    case CmdKind::Deadend:
      return true;
    case CmdKind::Seq:
    case CmdKind::If:
      return well_formed(c->c1) && well_formed(c->c2);
    case CmdKind::While:
      return well_formed(c->c1);
    case CmdKind::Par: {
      if (c->t1 == c->t2) return false;
      if (!well_formed(c->c1) || !well_formed(c->c2)) return false;
      std::set<Tid> l, r;
      collect_tids(c->c1, l);
      collect_tids(c->c2, r);
      l.insert(c->t1);
      r.insert(c->t2);
      for (Tid t : l)
        if (r.count(t)) return false;
      return true;
    }
  }
  return false;
}

bool well_formed(const CommandPool& pool) {
  if (pool.empty()) return false;
  std::set<Tid> seen;
  for (const auto& [tid, cmd] : pool) {
    if (!well_formed(cmd)) return false;
    std::set<Tid> inner;
    collect_tids(cmd, inner);
    if (inner.count(tid)) return false;
    inner.insert(tid);
    for (Tid t : inner)
      if (!seen.insert(t).second) return false;
  }
  return true;
}

bool all_skip(const CommandPool& pool) {
  for (const auto& [tid, cmd] : pool)
    if (!is_skip(cmd)) return false;
  return true;
}

namespace {

bool expr_mentions_any(const ExprPtr& e, const std::set<Reg>& z) {
  FvSet fv;
  collect_fv(e, fv);
  for (Reg r : z)
    if (fv.regs.count(r)) return true;
  return false;
}

}  // namespace

CmdPtr remove_aux(const CmdPtr& c, const std::set<Reg>& z) {
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Deadend:
      return c;
    case CmdKind::Instr: {
      const auto& p = c->instr.prim;
      // z-registers must not be read or written by the retained parts.
      if ((p.kind == PrimKind::Assign || p.kind == PrimKind::Load) && z.count(p.reg))
        throw std::invalid_argument("auxiliary register assigned by a retained command");
      if (p.expr && expr_mentions_any(p.expr, z))
        throw std::invalid_argument("auxiliary register read by a retained command");
      InstrCmd out;
      out.prim = p;
      for (const auto& [r, e] : c->instr.aux) {
        if (z.count(r)) continue;
        if (expr_mentions_any(e, z))
          throw std::invalid_argument("auxiliary register read by a retained assignment");
        out.aux.emplace_back(r, e);
      }
      return mk_instr(std::move(out), c->pos);
    }
    case CmdKind::Seq:
      return mk_seq(remove_aux(c->c1, z), remove_aux(c->c2, z));
    case CmdKind::If:
      if (expr_mentions_any(c->cond, z))
        throw std::invalid_argument("auxiliary register read by a branch condition");
      return mk_if(c->cond, remove_aux(c->c1, z), remove_aux(c->c2, z), c->pos);
    case CmdKind::While:
      if (expr_mentions_any(c->cond, z))
        throw std::invalid_argument("auxiliary register read by a loop condition");
      return mk_while(c->cond, remove_aux(c->c1, z), c->pos);
    case CmdKind::Par:
      return mk_par(c->t1, remove_aux(c->c1, z), c->t2, remove_aux(c->c2, z), c->pos);
  }
  return c;
}

std::string prim_to_string(const PrimCmd& p, const SymbolTable& syms) {
  switch (p.kind) {
    case PrimKind::Assign:
      return syms.name(p.reg) + " := " + expr_to_string(p.expr, syms);
    case PrimKind::Store:
      return syms.name(p.loc) + " := " + expr_to_string(p.expr, syms);
    case PrimKind::Load:
      return "load " + syms.name(p.reg) + " := " + syms.name(p.loc);
    case PrimKind::Swap:
      return "swap " + syms.name(p.loc) + " " + expr_to_string(p.expr, syms);
  }
  return {};
}

std::string instr_to_string(const InstrCmd& ic, const SymbolTable& syms) {
  if (ic.aux.empty()) return prim_to_string(ic.prim, syms);
  std::string out = "<" + prim_to_string(ic.prim, syms);
  for (const auto& [r, e] : ic.aux)
    out += ", " + syms.name(r) + " := " + expr_to_string(e, syms);
  out += ">";
  return out;
}

namespace {

void print_cmd(const CmdPtr& c, const SymbolTable& syms, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (c->kind) {
    case CmdKind::Skip:
      out += pad + "skip";
      return;
    case CmdKind::Deadend:
      out += pad + "unroll_bound";
      return;
    case CmdKind::Instr:
      out += pad + instr_to_string(c->instr, syms);
      return;
    case CmdKind::Seq:
      print_cmd(c->c1, syms, indent, out);
      out += ";\n";
      print_cmd(c->c2, syms, indent, out);
      return;
    case CmdKind::If:
      out += pad + "if " + expr_to_string(c->cond, syms) + " {\n";
      print_cmd(c->c1, syms, indent + 1, out);
      out += "\n" + pad + "} else {\n";
      print_cmd(c->c2, syms, indent + 1, out);
      out += "\n" + pad + "}";
      return;
    case CmdKind::While:
      out += pad + "while " + expr_to_string(c->cond, syms) + " {\n";
      print_cmd(c->c1, syms, indent + 1, out);
      out += "\n" + pad + "}";
      return;
    case CmdKind::Par:
      out += pad + "par " + syms.name(c->t1) + " {\n";
      print_cmd(c->c1, syms, indent + 1, out);
      out += "\n" + pad + "} || " + syms.name(c->t2) + " {\n";
      print_cmd(c->c2, syms, indent + 1, out);
      out += "\n" + pad + "}";
      return;
  }
}

}  // namespace

std::string cmd_to_string(const CmdPtr& c, const SymbolTable& syms, int indent) {
  std::string out;
  print_cmd(c, syms, indent, out);
  return out;
}

std::string pool_to_string(const CommandPool& pool, const SymbolTable& syms) {
  std::string out;
  for (const auto& [tid, cmd] : pool) {
    out += "thread " + syms.name(tid) + " {\n";
    out += cmd_to_string(cmd, syms, 1);
    out += "\n}\n";
  }
  return out;
}

}  // namespace sraw
