#include "sraw/explore.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "sraw/graphs.hpp"

namespace sraw {

bool OutcomeSet::contains(const RegStore& g) const {
  return std::binary_search(finals.begin(), finals.end(), g);
}

std::vector<Reg> program_registers(const CommandPool& pool) {
  FvSet fv;
  for (const auto& [tid, cmd] : pool) collect_cmd_fv(cmd, fv);
  return {fv.regs.begin(), fv.regs.end()};
}

std::vector<Val> derive_values(const LitmusSpec& spec) {
  std::set<Val> vals{0};
  for (const auto& [tid, cmd] : spec.program) collect_store_values(cmd, vals);
  for (const auto& [loc, v] : spec.initial) vals.insert(v);
  return {vals.begin(), vals.end()};
}

namespace {

CmdPtr unroll_cmd(const CmdPtr& c, std::size_t unroll) {
  switch (c->kind) {
    case CmdKind::Instr:
    case CmdKind::Skip:
    case CmdKind::Deadend:
      return c;
    case CmdKind::Seq:
      return mk_seq(unroll_cmd(c->c1, unroll), unroll_cmd(c->c2, unroll));
    case CmdKind::If:
      return mk_if(c->cond, unroll_cmd(c->c1, unroll), unroll_cmd(c->c2, unroll), c->pos);
    case CmdKind::While: {
      CmdPtr body = unroll_cmd(c->c1, unroll);
      CmdPtr acc = mk_deadend();
      for (std::size_t i = 0; i < unroll; ++i)
        acc = mk_if(c->cond, mk_seq(body, acc), mk_skip(), c->pos);
      return acc;
    }
    case CmdKind::Par:
      return mk_par(c->t1, unroll_cmd(c->c1, unroll), c->t2, unroll_cmd(c->c2, unroll), c->pos);
  }
  return c;
}

bool cmd_has_deadend(const CmdPtr& c) {
  switch (c->kind) {
    case CmdKind::Deadend:
      return true;
    case CmdKind::Seq:
    case CmdKind::If:
    case CmdKind::Par:
      return cmd_has_deadend(c->c1) || cmd_has_deadend(c->c2);
    case CmdKind::While:
      return cmd_has_deadend(c->c1);
    default:
      return false;
  }
}

RegStore project(const RegStore& g, const std::vector<Reg>& regs) {
  RegStore out;
  for (Reg r : regs) out = out.set(r, g.get(r));
  return out;
}

bool pool_equal(const CommandPool& a, const CommandPool& b) {
  if (a.size() != b.size()) return false;
  auto it = b.begin();
  for (const auto& [tid, cmd] : a) {
    if (it->first != tid || !cmd_equal(cmd, it->second)) return false;
    ++it;
  }
  return true;
}

std::size_t pool_hash(const CommandPool& p) {
  std::size_t h = 0x900d;
  for (const auto& [tid, cmd] : p) {
    hash_mix(h, tid.v);
    hash_mix(h, cmd_hash(cmd));
  }
  return h;
}

template <class Mem>
class Explorer {
 public:
  using State = SysState<Mem>;

  Explorer(const Mem& mem, const LitmusSpec& spec, const CommandPool& unrolled,
           const ExploreOptions& opts)
      : mem_(mem), opts_(opts) {
    std::vector<Tid> tids;
    for (const auto& [tid, cmd] : unrolled) tids.push_back(tid);
    State init{unrolled, RegStore{}, mem_.initial(tids, spec.init_tid, &spec.initial)};
    push_node(std::move(init), SIZE_MAX, Tid{}, std::nullopt);
  }

  struct Node {
    State state;
    std::size_t parent;
    Tid tid;
    OptLabel label;
    std::size_t hash;
  };

  struct Result {
    std::vector<std::pair<RegStore, std::size_t>> finals;  // full store + node index
    bool budget_hit = false;
    bool deadend_hit = false;
    std::size_t transitions = 0;
  };

  Result run() {
    Result res;
    std::vector<std::size_t> frontier{0};
    auto started = std::chrono::steady_clock::now();
    check_final(0, res);
    while (!frontier.empty()) {
      if (opts_.max_seconds > 0) {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
        if (dt.count() > opts_.max_seconds) {
          res.budget_hit = true;
          break;
        }
      }
      // expand the layer (optionally in parallel), then merge deterministically
      std::vector<std::vector<SysStep<Mem>>> expanded(frontier.size());
      int jobs = std::max(1, opts_.jobs);
      if (jobs == 1 || frontier.size() < 64) {
        for (std::size_t i = 0; i < frontier.size(); ++i)
          expanded[i] = system_step(mem_, nodes_[frontier[i]].state);
      } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> cursor{0};
        for (int w = 0; w < jobs; ++w)
          workers.emplace_back([&] {
            for (;;) {
              std::size_t i = cursor.fetch_add(1);
              if (i >= frontier.size()) return;
              expanded[i] = system_step(mem_, nodes_[frontier[i]].state);
            }
          });
        for (auto& t : workers) t.join();
      }
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (auto& step : expanded[i]) {
          ++res.transitions;
          auto inserted = push_node(std::move(step.next), frontier[i], step.tid, step.label);
          if (!inserted) continue;
          std::size_t idx = *inserted;
          if (pool_has_deadend(nodes_[idx].state.pool))
            res.deadend_hit = true;
          else {
            check_final(idx, res);
            next.push_back(idx);
          }
          if (nodes_.size() >= opts_.max_states) {
            res.budget_hit = true;
            next.clear();
            frontier.clear();
            break;
          }
        }
        if (res.budget_hit) break;
      }
      frontier = std::move(next);
    }
    states_ = nodes_.size();
    return res;
  }

  std::size_t states() const { return states_; }

  Witness witness_of(std::size_t node, const std::vector<Reg>& projection) const {
    Witness w;
    w.final_store = project(nodes_[node].state.gamma, projection);
    std::vector<std::pair<Tid, OptLabel>> rev;
    for (std::size_t i = node; nodes_[i].parent != SIZE_MAX; i = nodes_[i].parent)
      rev.emplace_back(nodes_[i].tid, nodes_[i].label);
    w.trace.assign(rev.rbegin(), rev.rend());
    return w;
  }

 private:
  // visited set keyed by node index; hashing and equality read nodes_
  struct KeyHash {
    const Explorer* self;
    std::size_t operator()(std::size_t i) const { return self->nodes_[i].hash; }
  };
  struct KeyEq {
    const Explorer* self;
    bool operator()(std::size_t a, std::size_t b) const {
      const State& x = self->nodes_[a].state;
      const State& y = self->nodes_[b].state;
      return pool_equal(x.pool, y.pool) && x.gamma == y.gamma && x.mem == y.mem;
    }
  };

  std::optional<std::size_t> push_node(State s, std::size_t parent, Tid tid, OptLabel label) {
    std::size_t h = pool_hash(s.pool);
    hash_mix(h, s.gamma.hash());
    hash_mix(h, mem_.hash(s.mem));
    nodes_.push_back(Node{std::move(s), parent, tid, std::move(label), h});
    auto [it, fresh] = visited_.insert(nodes_.size() - 1);
    if (!fresh) {
      nodes_.pop_back();
      return std::nullopt;
    }
    return nodes_.size() - 1;
  }

  void check_final(std::size_t idx, Result& res) {
    if (all_skip(nodes_[idx].state.pool))
      res.finals.emplace_back(nodes_[idx].state.gamma, idx);
  }

  const Mem& mem_;
  ExploreOptions opts_;
  std::vector<Node> nodes_;
  std::unordered_set<std::size_t, KeyHash, KeyEq> visited_{16, KeyHash{this}, KeyEq{this}};
  std::size_t states_ = 0;
};

template <class Mem>
OutcomeSet explore_with(const Mem& mem, const LitmusSpec& spec, const CommandPool& unrolled,
                        const ExploreOptions& opts, const std::vector<Reg>& projection,
                        std::vector<Witness>* witnesses) {
  auto t0 = std::chrono::steady_clock::now();
  Explorer<Mem> ex(mem, spec, unrolled, opts);
  auto res = ex.run();
  OutcomeSet out;
  out.projection = projection;
  std::map<RegStore, std::size_t> finals;  // projected store -> witness node
  for (auto& [gamma, idx] : res.finals) finals.emplace(project(gamma, projection), idx);
  for (auto& [g, idx] : finals) {
    out.finals.push_back(g);
    if (witnesses) witnesses->push_back(ex.witness_of(idx, projection));
  }
  out.stats.states = ex.states();
  out.stats.transitions = res.transitions;
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  out.stats.seconds = dt.count();
  if (res.budget_hit) {
    out.exact = false;
    out.inexact_reason = "state or time budget exceeded";
  } else if (res.deadend_hit) {
    out.exact = false;
    out.inexact_reason = "loop unroll bound reached";
  } else if (mem.truncated()) {
    out.exact = false;
    out.inexact_reason = "potential bounds truncated successors";
  }
  return out;
}

}  // namespace

CommandPool unroll_pool(const CommandPool& pool, std::size_t unroll) {
  CommandPool out;
  for (const auto& [tid, cmd] : pool) out[tid] = unroll_cmd(cmd, unroll);
  return out;
}

bool pool_has_deadend(const CommandPool& pool) {
  for (const auto& [tid, cmd] : pool)
    if (cmd_has_deadend(cmd)) return true;
  return false;
}

SraBounds derive_bounds(const LitmusSpec& spec, const CommandPool& unrolled, SraBounds partial) {
  SraBounds b = partial;
  if (b.max_list_len == 0) {
    std::size_t writes = 0;
    for (const auto& [tid, cmd] : unrolled) writes += count_write_instrs(cmd);
    b.max_list_len = writes + 2;
  }
  if (b.max_pot_size == 0) b.max_pot_size = 8;
  if (b.values.empty()) b.values = derive_values(spec);
  return b;
}

OutcomeSet reachable_finals(const LitmusSpec& spec, const ExploreOptions& opts,
                            std::vector<Reg> projection, std::vector<Witness>* witnesses) {
  if (!well_formed(spec.program)) throw std::invalid_argument("program is not well formed");
  CommandPool unrolled = unroll_pool(spec.program, opts.unroll);
  if (projection.empty()) projection = program_registers(spec.program);
  LocDomain dom = LocDomain::of(spec.syms->all_locs());
  if (opts.model == Model::Graph) {
    OutcomeSet out = oracle_finals(spec, opts, projection);
    return out;
  }
  if (opts.model == Model::Sc) {
    ScMemory mem(dom);
    return explore_with(mem, spec, unrolled, opts, projection, witnesses);
  }
  SraOptions sopts;
  sopts.bounds = derive_bounds(spec, unrolled, opts.bounds);
  sopts.unsound_drop_writer_suffix_check = opts.mutation_drop_writer_suffix;
  SraMemory mem(dom, spec.init_tid, sopts);
  return explore_with(mem, spec, unrolled, opts, projection, witnesses);
}

Verdict check_litmus(const LitmusSpec& spec, const ExploreOptions& opts) {
  Verdict v;
  std::set<Reg> clause_regs;
  for (const auto& cl : spec.clauses) {
    FvSet fv;
    collect_fv(cl.expr, fv);
    clause_regs.insert(fv.regs.begin(), fv.regs.end());
  }
  std::vector<Reg> projection = program_registers(spec.program);
  std::vector<Witness> wits;
  v.outcomes = reachable_finals(spec, opts, projection, &wits);
  for (const auto& cl : spec.clauses) {
    ClauseVerdict cv;
    cv.allow = cl.allow;
    cv.text = expr_to_string(cl.expr, *spec.syms);
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < v.outcomes.finals.size(); ++i)
      if (truthy(eval_expr(v.outcomes.finals[i], cl.expr))) {
        hit = i;
        break;
      }
    if (cl.allow) {
      cv.holds = hit.has_value();
    } else {
      cv.holds = !hit.has_value();
      if (hit) cv.witness = wits[*hit];
      cv.within_bounds_only = cv.holds && !v.outcomes.exact;
    }
    v.clauses.push_back(std::move(cv));
  }
  return v;
}

ModelComparison compare_models(const LitmusSpec& spec, const ExploreOptions& opts) {
  ModelComparison mc;
  std::vector<Reg> projection = program_registers(spec.program);
  ExploreOptions o = opts;
  o.model = Model::Sc;
  mc.sc = reachable_finals(spec, o, projection);
  o.model = Model::Sra;
  mc.sra = reachable_finals(spec, o, projection);
  o.model = Model::Graph;
  mc.oracle = reachable_finals(spec, o, projection);
  auto diff = [](const OutcomeSet& a, const OutcomeSet& b) {
    std::vector<RegStore> out;
    for (const auto& g : a.finals)
      if (!b.contains(g)) out.push_back(g);
    return out;
  };
  mc.sra_minus_sc = diff(mc.sra, mc.sc);
  mc.sc_minus_sra = diff(mc.sc, mc.sra);
  mc.sra_minus_oracle = diff(mc.sra, mc.oracle);
  mc.oracle_minus_sra = diff(mc.oracle, mc.sra);
  mc.sra_equals_oracle = mc.sra_minus_oracle.empty() && mc.oracle_minus_sra.empty();
  return mc;
}

bool replay_witness(const LitmusSpec& spec, const ExploreOptions& opts, const Witness& w) {
  CommandPool unrolled = unroll_pool(spec.program, opts.unroll);
  LocDomain dom = LocDomain::of(spec.syms->all_locs());
  std::vector<Tid> tids;
  for (const auto& [tid, cmd] : unrolled) tids.push_back(tid);

  auto run = [&](auto mem) {
    SysState<decltype(mem)> cur{unrolled, RegStore{},
                                mem.initial(tids, spec.init_tid, &spec.initial)};
    for (const auto& [tid, label] : w.trace) {
      bool advanced = false;
      for (auto& step : system_step(mem, cur)) {
        if (step.tid == tid && step.label == label) {
          cur = std::move(step.next);
          advanced = true;
          break;
        }
      }
      if (!advanced) return false;
    }
    if (!all_skip(cur.pool)) return false;
    for (const auto& [r, v] : w.final_store.entries())
      if (cur.gamma.get(r) != v) return false;
    return true;
  };

  if (opts.model == Model::Sc) return run(ScMemory(dom));
  SraOptions sopts;
  sopts.bounds = derive_bounds(spec, unrolled, opts.bounds);
  return run(SraMemory(dom, spec.init_tid, sopts));
}

}  // namespace sraw
