#ifndef SRAW_OPSEM_HPP_
#define SRAW_OPSEM_HPP_

#include <functional>
#include <optional>

#include "sraw/ast.hpp"

namespace sraw {

enum class LabelKind { Read, Write, Rmw, Fork, Join };

struct Label {
  LabelKind kind;
  Loc loc{};
  Val vr = 0, vw = 0;
  Tid t1{}, t2{};

  static Label read(Loc x, Val v) { return {LabelKind::Read, x, v, 0, {}, {}}; }
  static Label write(Loc x, Val v) { return {LabelKind::Write, x, 0, v, {}, {}}; }
  static Label rmw(Loc x, Val vr, Val vw) { return {LabelKind::Rmw, x, vr, vw, {}, {}}; }
  static Label fork(Tid a, Tid b) { return {LabelKind::Fork, {}, 0, 0, a, b}; }
  static Label join(Tid a, Tid b) { return {LabelKind::Join, {}, 0, 0, a, b}; }

  friend bool operator==(const Label& a, const Label& b) {
    return a.kind == b.kind && a.loc == b.loc && a.vr == b.vr && a.vw == b.vw && a.t1 == b.t1 &&
           a.t2 == b.t2;
  }
};

// nullopt stands for the silent step marker.
using OptLabel = std::optional<Label>;

std::string label_to_string(const OptLabel& l, const SymbolTable& syms);

// Read values a load (or the read part of a swap) may observe at this layer.
// The plain-domain form enumerates a configured value set; the memory layer
// filters infeasible choices when composed into the concurrent system.
using ValueDomain = std::vector<Val>;

struct PrimStep {
  OptLabel label;
  RegStore gamma;
};

struct CmdStep {
  OptLabel label;
  CmdPtr cmd;
  RegStore gamma;
};

struct PoolStep {
  Tid tid;
  OptLabel label;
  CommandPool pool;
  RegStore gamma;
};

std::vector<PrimStep> prim_step(const InstrCmd& ic, const RegStore& gamma,
                                const ValueDomain& domain);
std::vector<CmdStep> cmd_step(const CmdPtr& c, const RegStore& gamma, const ValueDomain& domain);
std::vector<PoolStep> pool_step(const CommandPool& pool, const RegStore& gamma,
                                const ValueDomain& domain);

// Same step relations but with load/swap read values supplied per thread and
// location by the memory system, so exploration never enumerates the raw
// value domain.
using ReadValueFn = std::function<std::vector<Val>(Loc)>;
using PoolReadFn = std::function<std::vector<Val>(Tid, Loc)>;

std::vector<PrimStep> prim_step_with(const InstrCmd& ic, const RegStore& gamma,
                                     const ReadValueFn& reads, const ReadValueFn& rmw_reads);
std::vector<PoolStep> pool_step_with(const CommandPool& pool, const RegStore& gamma,
                                     const PoolReadFn& reads, const PoolReadFn& rmw_reads);

}  // namespace sraw

#endif  // SRAW_OPSEM_HPP_
