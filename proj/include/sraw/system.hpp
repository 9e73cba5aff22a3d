#ifndef SRAW_SYSTEM_HPP_
#define SRAW_SYSTEM_HPP_

#include "sraw/scmem.hpp"
#include "sraw/srasteps.hpp"

namespace sraw {

// Memory system adapters share one interface so the concurrent-system
// composition and the explorer are generic over the model.

class ScMemory {
 public:
  using State = SCState;

  explicit ScMemory(const LocDomain& dom) : dom_(dom) {}

  State initial(const std::vector<Tid>&, Tid, const std::map<Loc, Val>* init) const {
    return initial_sc(dom_, init);
  }
  std::vector<Val> read_values(const State& m, Tid, Loc x) const {
    return {m.mem[static_cast<std::size_t>(dom_.index(x))]};
  }
  std::vector<Val> rmw_read_values(const State& m, Tid tau, Loc x) const {
    return read_values(m, tau, x);
  }
  std::vector<State> step(const State& m, Tid tau, const Label& l) const {
    return sc_step(dom_, m, tau, l);
  }
  std::vector<State> internal_steps(const State&) const { return {}; }  // no internal actions
  std::size_t hash(const State& m) const { return sc_hash(m); }
  bool truncated() const { return false; }

  const LocDomain& dom() const { return dom_; }

 private:
  LocDomain dom_;
};

class SraMemory {
 public:
  using State = PotentialMapping;

  SraMemory(const LocDomain& dom, Tid init_tid, SraOptions opts)
      : dom_(dom), init_tid_(init_tid), opts_(std::move(opts)) {}

  State initial(const std::vector<Tid>& tids, Tid init_tid,
                const std::map<Loc, Val>* init) const {
    return initial_sra(dom_, tids, init_tid, init);
  }

  std::vector<Val> read_values(const State& m, Tid tau, Loc x) const {
    return distinct_values(m, tau, x, /*rmw_only=*/false);
  }
  std::vector<Val> rmw_read_values(const State& m, Tid tau, Loc x) const {
    return distinct_values(m, tau, x, /*rmw_only=*/true);
  }

  std::vector<State> step(const State& m, Tid tau, const Label& l) const {
    std::vector<State> out;
    switch (l.kind) {
      case LabelKind::Read:
        for (auto& opt : sra_read_options(m, tau, dom_.index(l.loc), false, opts_, &trunc_))
          if (opt.v == l.vr) out.push_back(std::move(opt.after));
        break;
      case LabelKind::Write: {
        auto next = sra_write(m, tau, dom_.index(l.loc), l.vw, opts_, &trunc_);
        if (next) out.push_back(std::move(*next));
        break;
      }
      case LabelKind::Rmw:
        for (auto& [vr, next] : sra_rmw(m, tau, dom_.index(l.loc), l.vw, opts_, &trunc_))
          if (vr == l.vr) out.push_back(std::move(next));
        break;
      case LabelKind::Fork:
        out.push_back(sra_fork(m, tau, l.t1, l.t2));
        break;
      case LabelKind::Join:
        out.push_back(sra_join_meet(dom_, m, tau, l.t1, l.t2, opts_, &trunc_));
        break;
    }
    for (const State& s : out)
      if (!validate_state(dom_, s)) throw std::logic_error("invalid SRA successor state");
    return out;
  }

  // Lose and dup are folded into the labeled steps; nothing to enumerate.
  std::vector<State> internal_steps(const State&) const { return {}; }

  std::size_t hash(const State& m) const { return mapping_hash(m); }
  bool truncated() const { return trunc_.any(); }
  const SraTrunc& trunc() const { return trunc_; }
  const LocDomain& dom() const { return dom_; }
  const SraOptions& options() const { return opts_; }

 private:
  std::vector<Val> distinct_values(const State& m, Tid tau, Loc x, bool rmw_only) const {
    std::set<Val> vals;
    for (auto& opt : sra_read_options(m, tau, dom_.index(x), rmw_only, opts_, &trunc_))
      vals.insert(opt.v);
    return {vals.begin(), vals.end()};
  }

  LocDomain dom_;
  Tid init_tid_;
  SraOptions opts_;
  mutable SraTrunc trunc_;
};

enum class SysStepKind { Component, Memory };

template <class Mem>
struct SysState {
  CommandPool pool;
  RegStore gamma;
  typename Mem::State mem;
};

template <class Mem>
struct SysStep {
  SysStepKind kind = SysStepKind::Component;
  Tid tid{};
  OptLabel label;
  SysState<Mem> next;
};

// Synchronized transitions of program and memory: shared labels step both,
// silent program steps leave memory fixed, internal memory steps leave the
// program and registers fixed.
template <class Mem>
std::vector<SysStep<Mem>> system_step(const Mem& memory, const SysState<Mem>& s) {
  std::vector<SysStep<Mem>> out;
  auto rd = [&](Tid t, Loc x) { return memory.read_values(s.mem, t, x); };
  auto rmw = [&](Tid t, Loc x) { return memory.rmw_read_values(s.mem, t, x); };
  for (auto& cs : pool_step_with(s.pool, s.gamma, rd, rmw)) {
    if (!cs.label) {
      out.push_back({SysStepKind::Component, cs.tid, std::nullopt,
                     SysState<Mem>{std::move(cs.pool), std::move(cs.gamma), s.mem}});
      continue;
    }
    for (auto& m2 : memory.step(s.mem, cs.tid, *cs.label))
      out.push_back({SysStepKind::Component, cs.tid, cs.label,
                     SysState<Mem>{cs.pool, cs.gamma, std::move(m2)}});
  }
  for (auto& m2 : memory.internal_steps(s.mem))
    out.push_back(
        {SysStepKind::Memory, Tid{}, std::nullopt, SysState<Mem>{s.pool, s.gamma, std::move(m2)}});
  return out;
}

}  // namespace sraw

#endif  // SRAW_SYSTEM_HPP_
