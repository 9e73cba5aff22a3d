#ifndef SRAW_EXPLORE_HPP_
#define SRAW_EXPLORE_HPP_

#include <chrono>

#include "sraw/system.hpp"

namespace sraw {

enum class Model { Sc, Sra, Graph };

struct ExploreOptions {
  Model model = Model::Sra;
  SraBounds bounds;           // zero/empty fields are derived from the program
  std::size_t unroll = 2;
  std::size_t max_states = 4'000'000;
  double max_seconds = 0;     // 0: no wall-clock budget
  int jobs = 1;
  bool mutation_drop_writer_suffix = false;  // testing hook, see srasteps
};

struct ExploreStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  double seconds = 0;
};

struct OutcomeSet {
  std::vector<RegStore> finals;  // projected, sorted, unique
  std::vector<Reg> projection;
  bool exact = true;
  std::string inexact_reason;
  ExploreStats stats;

  bool contains(const RegStore& g) const;
};

struct Witness {
  std::vector<std::pair<Tid, OptLabel>> trace;  // component steps from the initial state
  RegStore final_store;
};

struct ClauseVerdict {
  bool allow = false;
  std::string text;
  bool holds = false;
  bool within_bounds_only = false;  // verdict relies on a bounded exploration
  std::optional<Witness> witness;   // for violated forbid clauses
};

struct Verdict {
  std::vector<ClauseVerdict> clauses;
  OutcomeSet outcomes;
  bool all_hold() const {
    for (const auto& c : clauses)
      if (!c.holds) return false;
    return true;
  }
};

// Registers a comparison between engines should project on: every register
// the program mentions.
std::vector<Reg> program_registers(const CommandPool& pool);

// Value domain: values syntactically stored plus 0 plus initial values.
std::vector<Val> derive_values(const LitmusSpec& spec);

// Unrolls every loop to the given depth; iterations beyond the bound become
// dead ends that mark the outcome set as bounded.
CommandPool unroll_pool(const CommandPool& pool, std::size_t unroll);
bool pool_has_deadend(const CommandPool& pool);

SraBounds derive_bounds(const LitmusSpec& spec, const CommandPool& unrolled, SraBounds partial);

// All register stores at all-skip configurations reachable through the
// synchronized system, projected to `projection` (empty: program registers).
OutcomeSet reachable_finals(const LitmusSpec& spec, const ExploreOptions& opts,
                            std::vector<Reg> projection = {},
                            std::vector<Witness>* witnesses = nullptr);

Verdict check_litmus(const LitmusSpec& spec, const ExploreOptions& opts);

struct ModelComparison {
  OutcomeSet sc, sra, oracle;
  std::vector<RegStore> sra_minus_sc, sc_minus_sra, sra_minus_oracle, oracle_minus_sra;
  bool sra_equals_oracle = false;
};

ModelComparison compare_models(const LitmusSpec& spec, const ExploreOptions& opts);

// Replays a witness through the synchronized system; true when every step is
// enabled and the final store matches.
bool replay_witness(const LitmusSpec& spec, const ExploreOptions& opts, const Witness& w);

}  // namespace sraw

#endif  // SRAW_EXPLORE_HPP_
