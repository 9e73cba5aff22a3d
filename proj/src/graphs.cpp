#include "sraw/graphs.hpp"

#include <algorithm>
#include <bitset>

namespace sraw {

namespace {

constexpr std::size_t kMaxEvents = 64;
using Bits = std::bitset<kMaxEvents>;

struct Reach {
  std::vector<Bits> succ;  // transitive closure

  explicit Reach(std::size_t n) : succ(n) {}

  void add_edges(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    for (auto& [a, b] : edges) succ[a].set(b);
  }
  void close() {
    // Floyd-Warshall over bitsets; graphs are tiny
    for (std::size_t k = 0; k < succ.size(); ++k)
      for (std::size_t i = 0; i < succ.size(); ++i)
        if (succ[i].test(k)) succ[i] |= succ[k];
  }
  bool reaches(std::size_t a, std::size_t b) const { return succ[a].test(b); }
  bool has_cycle() const {
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (succ[i].test(i)) return true;
    return false;
  }
};

std::vector<std::pair<std::size_t, std::size_t>> base_edges(const ExecutionGraph& g,
                                                            bool with_rf) {
  std::vector<std::pair<std::size_t, std::size_t>> edges = g.po;
  for (std::size_t e = 0; e < g.events.size(); ++e) {
    if (g.events[e].is_init) continue;
    for (std::size_t i = 0; i < g.events.size(); ++i)
      if (g.events[i].is_init) edges.emplace_back(i, e);  // init precedes everything
    if (with_rf && g.is_read(e) && g.rf[e] != SIZE_MAX) edges.emplace_back(g.rf[e], e);
  }
  return edges;
}

bool check_axioms(const ExecutionGraph& g, bool sc) {
  const std::size_t n = g.events.size();
  if (n > kMaxEvents) throw std::invalid_argument("execution graph too large");

  // (1) acyclic(po u rf u mo) -- for SC also with fr
  Reach hb(n);
  hb.add_edges(base_edges(g, /*with_rf=*/true));
  hb.close();
  if (hb.has_cycle()) return false;

  Reach full(n);
  auto edges = base_edges(g, true);
  for (const auto& [locv, order] : g.mo)
    for (std::size_t i = 0; i + 1 < order.size(); ++i) edges.emplace_back(order[i], order[i + 1]);
  if (sc) {
    // fr: read -> writes mo-after its source
    for (std::size_t r = 0; r < n; ++r) {
      if (!g.is_read(r) || g.rf[r] == SIZE_MAX) continue;
      const auto& order = g.mo.at(g.events[r].loc.v);
      auto it = std::find(order.begin(), order.end(), g.rf[r]);
      for (auto j = it + 1; j != order.end(); ++j)
        if (*j != r) edges.emplace_back(r, *j);
    }
  }
  full.add_edges(edges);
  full.close();
  if (full.has_cycle()) return false;

  // (2) no read from a write overwritten before the read in happens-before
  for (std::size_t r = 0; r < n; ++r) {
    if (!g.is_read(r) || g.rf[r] == SIZE_MAX) continue;
    const auto& order = g.mo.at(g.events[r].loc.v);
    auto it = std::find(order.begin(), order.end(), g.rf[r]);
    if (it == order.end()) return false;
    for (auto j = it + 1; j != order.end(); ++j)
      if (*j == r || hb.reaches(*j, r)) return false;
  }

  // (3) RMWs read from their immediate mo-predecessor
  for (std::size_t u = 0; u < n; ++u) {
    if (g.events[u].kind != LabelKind::Rmw) continue;
    const auto& order = g.mo.at(g.events[u].loc.v);
    auto it = std::find(order.begin(), order.end(), u);
    if (it == order.begin() || it == order.end()) return false;
    if (*(it - 1) != g.rf[u]) return false;
  }
  return true;
}

// enumerate modification orders per location, checking axioms at the leaves
bool exists_mo(const ExecutionGraph& g, bool sc) {
  std::vector<std::uint32_t> locs;
  std::map<std::uint32_t, std::vector<std::size_t>> writes;
  for (std::size_t e = 0; e < g.events.size(); ++e)
    if (g.is_write(e) && !g.events[e].is_init) writes[g.events[e].loc.v].push_back(e);
  for (std::size_t e = 0; e < g.events.size(); ++e)
    if (g.events[e].is_init) writes[g.events[e].loc.v];  // ensure key exists
  for (auto& [locv, ws] : writes) locs.push_back(locv);

  ExecutionGraph work = g;
  work.mo.clear();
  for (std::size_t e = 0; e < g.events.size(); ++e)
    if (g.events[e].is_init) work.mo[g.events[e].loc.v] = {e};

  std::function<bool(std::size_t)> go = [&](std::size_t li) -> bool {
    if (li == locs.size()) return check_axioms(work, sc);
    auto& ws = writes[locs[li]];
    std::sort(ws.begin(), ws.end());
    do {
      auto& order = work.mo[locs[li]];
      order.resize(1);  // keep init
      order.insert(order.end(), ws.begin(), ws.end());
      if (go(li + 1)) return true;
    } while (std::next_permutation(ws.begin(), ws.end()));
    return false;
  };
  return go(0);
}

}  // namespace

bool sra_consistent(const ExecutionGraph& g) { return exists_mo(g, false); }
bool sc_consistent(const ExecutionGraph& g) { return exists_mo(g, true); }
bool sra_consistent_with_mo(const ExecutionGraph& g) { return check_axioms(g, false); }
bool sc_consistent_with_mo(const ExecutionGraph& g) { return check_axioms(g, true); }

namespace {

struct ExecBuilder {
  ExecutionGraph g;
  RegStore gamma;
  std::map<std::uint32_t, std::size_t> po_counter;  // per thread
};

struct Enumerator {
  const LitmusSpec& spec;
  std::vector<Val> values;
  const std::function<bool(const ExecutionGraph&)>& visit;
  bool stopped = false;
  bool bounded = false;
  std::string reason;
  std::size_t emitted = 0;
  EnumerationLimits limits;

  using Cont = std::function<void(ExecBuilder, std::vector<std::size_t>)>;

  std::size_t add_event(ExecBuilder& b, Tid tid, LabelKind k, Loc loc, Val vr, Val vw,
                        const std::vector<std::size_t>& prevs) {
    GEvent ev;
    ev.id = b.g.events.size();
    ev.tid = tid;
    ev.kind = k;
    ev.loc = loc;
    ev.vr = vr;
    ev.vw = vw;
    ev.po_index = b.po_counter[tid.v]++;
    b.g.events.push_back(ev);
    b.g.rf.push_back(SIZE_MAX);
    for (std::size_t p : prevs) b.g.po.emplace_back(p, ev.id);
    return ev.id;
  }

  void exec_instr(const InstrCmd& ic, Tid tid, ExecBuilder b, std::vector<std::size_t> prevs,
                  const Cont& k) {
    const PrimCmd& p = ic.prim;
    auto finish_aux = [&](ExecBuilder b2, std::vector<std::size_t> lasts) {
      for (const auto& [r, e] : ic.aux) b2.gamma = b2.gamma.set(r, eval_expr(b2.gamma, e));
      k(std::move(b2), std::move(lasts));
    };
    switch (p.kind) {
      case PrimKind::Assign: {
        b.gamma = b.gamma.set(p.reg, eval_expr(b.gamma, p.expr));
        finish_aux(std::move(b), std::move(prevs));
        return;
      }
      case PrimKind::Store: {
        Val v = eval_expr(b.gamma, p.expr);
        if (std::find(values.begin(), values.end(), v) == values.end()) {
          bounded = true;
          reason = "stored value outside the derived value domain";
          return;
        }
        std::size_t e = add_event(b, tid, LabelKind::Write, p.loc, 0, v, prevs);
        finish_aux(std::move(b), {e});
        return;
      }
      case PrimKind::Load: {
        for (Val v : values) {
          if (stopped) return;
          ExecBuilder b2 = b;
          std::size_t e = add_event(b2, tid, LabelKind::Read, p.loc, v, 0, prevs);
          b2.gamma = b2.gamma.set(p.reg, v);
          finish_aux(std::move(b2), {e});
        }
        return;
      }
      case PrimKind::Swap: {
        Val vw = eval_expr(b.gamma, p.expr);
        if (std::find(values.begin(), values.end(), vw) == values.end()) {
          bounded = true;
          reason = "stored value outside the derived value domain";
          return;
        }
        for (Val vr : values) {
          if (stopped) return;
          ExecBuilder b2 = b;
          std::size_t e = add_event(b2, tid, LabelKind::Rmw, p.loc, vr, vw, prevs);
          finish_aux(std::move(b2), {e});
        }
        return;
      }
    }
  }

  void exec_cmd(const CmdPtr& c, Tid tid, ExecBuilder b, std::vector<std::size_t> prevs,
                const Cont& k) {
    if (stopped) return;
    switch (c->kind) {
      case CmdKind::Skip:
        k(std::move(b), std::move(prevs));
        return;
      case CmdKind::Deadend:
        bounded = true;  // path beyond the unroll budget; drop it
        return;
      case CmdKind::Instr:
        exec_instr(c->instr, tid, std::move(b), std::move(prevs), k);
        return;
      case CmdKind::Seq: {
        CmdPtr c2 = c->c2;
        exec_cmd(c->c1, tid, std::move(b), std::move(prevs),
                 [this, c2, tid, &k](ExecBuilder b2, std::vector<std::size_t> lasts) {
                   exec_cmd(c2, tid, std::move(b2), std::move(lasts), k);
                 });
        return;
      }
      case CmdKind::If: {
        bool taken = truthy(eval_expr(b.gamma, c->cond));
        exec_cmd(taken ? c->c1 : c->c2, tid, std::move(b), std::move(prevs), k);
        return;
      }
      case CmdKind::While:
        throw std::invalid_argument("oracle requires an unrolled (loop-free) program");
      case CmdKind::Par: {
        std::size_t f = add_event(b, tid, LabelKind::Fork, Loc{}, 0, 0, prevs);
        Tid t1 = c->t1, t2 = c->t2, tp = tid;
        CmdPtr c2 = c->c2;
        exec_cmd(c->c1, t1, std::move(b), {f},
                 [this, c2, t1, t2, tp, f, &k](ExecBuilder b1, std::vector<std::size_t> l1) {
                   exec_cmd(c2, t2, std::move(b1), {f},
                            [this, t1, t2, tp, l1, &k](ExecBuilder b2,
                                                       std::vector<std::size_t> l2) {
                              std::vector<std::size_t> all = l1;
                              all.insert(all.end(), l2.begin(), l2.end());
                              std::size_t j =
                                  add_event(b2, tp, LabelKind::Join, Loc{}, 0, 0, all);
                              b2.g.events[j].t_fork_ids(t1, t2);
                              k(std::move(b2), {j});
                            });
                 });
        return;
      }
    }
  }

  // rf assignment over finished event structures
  void assign_rf(ExecutionGraph g, std::size_t next_read) {
    if (stopped) return;
    while (next_read < g.events.size() && !(g.is_read(next_read))) ++next_read;
    if (next_read == g.events.size()) {
      if (++emitted > limits.max_graphs) {
        bounded = true;
        reason = "graph enumeration budget exceeded";
        stopped = true;
        return;
      }
      if (!visit(g)) stopped = true;
      return;
    }
    const GEvent& r = g.events[next_read];
    for (std::size_t w = 0; w < g.events.size(); ++w) {
      if (!g.is_write(w) && !g.events[w].is_init) continue;
      const GEvent& we = g.events[w];
      if (!(we.loc == r.loc)) continue;
      if (we.vw != r.vr) continue;
      if (w == next_read) continue;
      g.rf[next_read] = w;
      assign_rf(g, next_read + 1);
      if (stopped) return;
    }
    g.rf[next_read] = SIZE_MAX;
  }
};

}  // namespace

EnumerationResult enumerate_executions(const LitmusSpec& spec, const ExploreOptions& opts,
                                       const std::function<bool(const ExecutionGraph&)>& visit) {
  // threads must use disjoint registers for the merged final store to be
  // schedule-independent
  {
    std::vector<FvSet> fvs;
    for (const auto& [tid, cmd] : spec.program) {
      FvSet fv;
      collect_cmd_fv(cmd, fv);
      fvs.push_back(std::move(fv));
    }
    for (std::size_t i = 0; i < fvs.size(); ++i)
      for (std::size_t j = i + 1; j < fvs.size(); ++j)
        for (Reg r : fvs[i].regs)
          if (fvs[j].regs.count(r))
            throw std::invalid_argument("oracle requires per-thread-disjoint registers");
  }

  Enumerator en{spec, derive_values(spec), visit};
  CommandPool unrolled = unroll_pool(spec.program, opts.unroll);

  // initial writes by the initializer thread
  ExecBuilder base;
  for (Loc l : spec.syms->all_locs()) {
    GEvent ev;
    ev.id = base.g.events.size();
    ev.tid = spec.init_tid;
    ev.kind = LabelKind::Write;
    ev.loc = l;
    ev.vw = 0;
    auto it = spec.initial.find(l);
    if (it != spec.initial.end()) ev.vw = it->second;
    ev.is_init = true;
    base.g.events.push_back(ev);
    base.g.rf.push_back(SIZE_MAX);
  }

  // execute the pool thread by thread (registers are disjoint)
  std::function<void(std::vector<std::pair<Tid, CmdPtr>>, std::size_t, ExecBuilder)> go =
      [&](std::vector<std::pair<Tid, CmdPtr>> threads, std::size_t i, ExecBuilder b) {
        if (en.stopped) return;
        if (i == threads.size()) {
          b.g.final_gamma = b.gamma;
          en.assign_rf(std::move(b.g), 0);
          return;
        }
        en.exec_cmd(threads[i].second, threads[i].first, std::move(b), {},
                    [&go, &threads, i](ExecBuilder b2, std::vector<std::size_t>) {
                      go(threads, i + 1, std::move(b2));
                    });
      };
  std::vector<std::pair<Tid, CmdPtr>> threads(unrolled.begin(), unrolled.end());
  go(threads, 0, base);

  EnumerationResult res;
  res.complete = !en.bounded && !en.stopped;
  res.reason = en.reason.empty() && en.bounded ? "loop unroll bound reached" : en.reason;
  return res;
}

OutcomeSet oracle_finals(const LitmusSpec& spec, const ExploreOptions& opts,
                         const std::vector<Reg>& projection) {
  auto t0 = std::chrono::steady_clock::now();
  std::set<RegStore> finals;
  std::size_t graphs = 0;
  EnumerationResult res =
      enumerate_executions(spec, opts, [&](const ExecutionGraph& g) {
        ++graphs;
        if (sra_consistent(g)) {
          RegStore p;
          for (Reg r : projection) p = p.set(r, g.final_gamma.get(r));
          finals.insert(std::move(p));
        }
        return true;
      });
  OutcomeSet out;
  out.projection = projection;
  out.finals.assign(finals.begin(), finals.end());
  out.exact = res.complete;
  out.inexact_reason = res.reason;
  out.stats.states = graphs;
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  out.stats.seconds = dt.count();
  return out;
}

std::string graph_to_dot(const ExecutionGraph& g, const SymbolTable& syms) {
  std::string out = "digraph exec {\n";
  for (const GEvent& e : g.events) {
    std::string lbl;
    switch (e.kind) {
      case LabelKind::Read:
        lbl = "R " + syms.name(e.loc) + "=" + std::to_string(e.vr);
        break;
      case LabelKind::Write:
        lbl = (e.is_init ? "init " : "W ") + syms.name(e.loc) + "=" + std::to_string(e.vw);
        break;
      case LabelKind::Rmw:
        lbl = "U " + syms.name(e.loc) + " " + std::to_string(e.vr) + "->" +
              std::to_string(e.vw);
        break;
      case LabelKind::Fork:
        lbl = "fork";
        break;
      case LabelKind::Join:
        lbl = "join";
        break;
    }
    out += "  e" + std::to_string(e.id) + " [label=\"" + syms.name(e.tid) + ": " + lbl + "\"];\n";
  }
  for (auto& [a, b] : g.po)
    out += "  e" + std::to_string(a) + " -> e" + std::to_string(b) + " [label=\"po\"];\n";
  for (std::size_t r = 0; r < g.events.size(); ++r)
    if (g.rf[r] != SIZE_MAX)
      out += "  e" + std::to_string(g.rf[r]) + " -> e" + std::to_string(r) +
             " [label=\"rf\",color=red];\n";
  for (const auto& [locv, order] : g.mo)
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      out += "  e" + std::to_string(order[i]) + " -> e" + std::to_string(order[i + 1]) +
             " [label=\"mo\",color=blue];\n";
  out += "}\n";
  return out;
}

}  // namespace sraw
