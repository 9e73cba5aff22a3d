#ifndef SRAW_SRASTEPS_HPP_
#define SRAW_SRASTEPS_HPP_

#include <atomic>
#include <optional>

#include "sraw/potential.hpp"

namespace sraw {

struct SraBounds {
  std::size_t max_list_len = 0;  // 0: derive from the program (writes + 2)
  std::size_t max_pot_size = 8;
  std::vector<Val> values;  // value domain for program-level read enumeration
};

struct SraOptions {
  SraBounds bounds;
  // Testing hook: drop the premise that the updated suffix of another
  // thread's list must be observable by the writer. Breaks causality.
  bool unsound_drop_writer_suffix_check = false;
};

// Flags accumulated while stepping; distinguishes exact results from results
// that hit a bound. Atomic so parallel exploration workers can share one.
struct SraTrunc {
  std::atomic<bool> potential_capped{false};
  std::atomic<bool> list_len_capped{false};
  bool any() const { return potential_capped.load() || list_len_capped.load(); }
};

// Literal read rule: every list's first store agrees on value and writer.
// The state is unchanged on success.
std::vector<std::pair<Val, Tid>> sra_read(const PotentialMapping& d, Tid tau, int loc_idx);

// Read with lazy losing folded in: for every readable (value, writer) pair,
// the canonical cut mapping obtained by advancing each of the reader's lists
// to its earliest matching store and dropping unmatchable lists.
struct SraReadOption {
  Val v;
  Tid writer;
  PotentialMapping after;
};
std::vector<SraReadOption> sra_read_options(const PotentialMapping& d, Tid tau, int loc_idx,
                                            bool rmw_only, const SraOptions& opts,
                                            SraTrunc* trunc);

// Canonical write successor: the writer's lists are overwritten whole; every
// other thread receives the maximal derivable set of split updates, where the
// kept suffix must be observable by the writer (up to losing and duplication)
// and one duplication at the split seam is allowed. Returns nothing when some
// thread has no derivable list.
std::optional<PotentialMapping> sra_write(const PotentialMapping& d, Tid tau, int loc_idx, Val v,
                                          const SraOptions& opts, SraTrunc* trunc);

// RMW: read restricted to RMW-flagged first stores, composed with the write.
std::vector<std::pair<Val, PotentialMapping>> sra_rmw(const PotentialMapping& d, Tid tau,
                                                      int loc_idx, Val vw, const SraOptions& opts,
                                                      SraTrunc* trunc);

PotentialMapping sra_fork(const PotentialMapping& d, Tid tau, Tid t1, Tid t2);

// Literal join: plain set intersection of the children's potentials;
// disabled (nullopt) when the intersection is empty.
std::optional<PotentialMapping> sra_join(const PotentialMapping& d, Tid tau, Tid t1, Tid t2);

// Join composed with lazy losing: the parent receives the maximal common
// sublists of the children's potentials (never empty, since all lists share
// the final store).
PotentialMapping sra_join_meet(const LocDomain& dom, const PotentialMapping& d, Tid tau, Tid t1,
                               Tid t2, const SraOptions& opts, SraTrunc* trunc);

// Internal-step enumerations, exercised by tests and fuzzing; exploration
// applies losing lazily inside the labeled steps instead.
std::vector<PotentialMapping> lose_successors(const LocDomain& dom, const PotentialMapping& d,
                                              std::size_t cap);
std::vector<PotentialMapping> dup_expand(const LocDomain& dom, const PotentialMapping& d,
                                         std::size_t max_list_len);

PotentialMapping canonicalize_mapping(PotentialMapping d, std::size_t max_pot_size,
                                      SraTrunc* trunc);

// All nonempty subsequences of every list of a potential (deduplicated).
std::vector<StoreList> all_sublists(const Potential& pot);

}  // namespace sraw

#endif  // SRAW_SRASTEPS_HPP_
