#ifndef SRAW_GRAPHS_HPP_
#define SRAW_GRAPHS_HPP_

#include <functional>

#include "sraw/explore.hpp"

namespace sraw {

// Declarative execution-graph semantics on loop-free (or unrolled) programs.
// Serves as the independent oracle the potential-based engine is checked
// against.

struct GEvent {
  std::size_t id = 0;
  Tid tid{};
  LabelKind kind = LabelKind::Read;
  Loc loc{};
  Val vr = 0, vw = 0;
  std::size_t po_index = 0;  // order within its thread
  bool is_init = false;
};

struct ExecutionGraph {
  std::vector<GEvent> events;                           // init events first
  std::vector<std::pair<std::size_t, std::size_t>> po;  // program order + fork/join edges
  std::vector<std::size_t> rf;    // per event id: source write (SIZE_MAX if not a read)
  std::map<std::uint32_t, std::vector<std::size_t>> mo;  // per Loc.v: writes in order
  RegStore final_gamma;

  bool is_read(std::size_t e) const {
    return events[e].kind == LabelKind::Read || events[e].kind == LabelKind::Rmw;
  }
  bool is_write(std::size_t e) const {
    return events[e].kind == LabelKind::Write || events[e].kind == LabelKind::Rmw;
  }
};

// Consistency under the strong release-acquire axioms: some modification
// order makes (1) po+rf+mo acyclic, (2) no read takes a value overwritten
// before it in happens-before, (3) RMWs read their immediate mo-predecessor.
// The graph's own mo is ignored; satisfying orders are searched for.
bool sra_consistent(const ExecutionGraph& g);

// Sequential consistency: acyclic po+rf+mo+fr for some mo, with RMW
// atomicity. Used for the SC column of model comparisons.
bool sc_consistent(const ExecutionGraph& g);

// Check a graph with its mo taken as given.
bool sra_consistent_with_mo(const ExecutionGraph& g);
bool sc_consistent_with_mo(const ExecutionGraph& g);

struct EnumerationLimits {
  std::size_t max_graphs = 5'000'000;
};

// All candidate executions of the program: control paths over the value
// domain, reads-from choices consistent with values, no mo committed yet.
// The visitor returns false to stop enumeration.
struct EnumerationResult {
  bool complete = true;
  std::string reason;
};
EnumerationResult enumerate_executions(const LitmusSpec& spec, const ExploreOptions& opts,
                                       const std::function<bool(const ExecutionGraph&)>& visit);

// Final register stores of consistent complete executions.
OutcomeSet oracle_finals(const LitmusSpec& spec, const ExploreOptions& opts,
                         const std::vector<Reg>& projection);

std::string graph_to_dot(const ExecutionGraph& g, const SymbolTable& syms);

}  // namespace sraw

#endif  // SRAW_GRAPHS_HPP_
