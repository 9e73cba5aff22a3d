#ifndef SRAW_POTENTIAL_HPP_
#define SRAW_POTENTIAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sraw/expr.hpp"

namespace sraw {

// Dense index over the locations a memory state covers. Loc ids from the
// symbol table are interned densely, so program-wide domains index by id;
// restricted domains (bounded semantic checks) remap.
struct LocDomain {
  std::vector<Loc> locs;
  std::vector<int> idx;  // by Loc.v; -1 if absent

  static LocDomain of(std::vector<Loc> ls) {
    LocDomain d;
    d.locs = std::move(ls);
    std::uint32_t maxv = 0;
    for (Loc l : d.locs) maxv = std::max(maxv, l.v);
    d.idx.assign(maxv + 1, -1);
    for (std::size_t i = 0; i < d.locs.size(); ++i) d.idx[d.locs[i].v] = static_cast<int>(i);
    return d;
  }
  std::size_t size() const { return locs.size(); }
  int index(Loc l) const { return l.v < idx.size() ? idx[l.v] : -1; }
};

// One entry of a potential store: value, RMW capability flag, and the thread
// the value was written by.
struct Cell {
  Val val = 0;
  Tid tid{};
  bool rmw = true;  // true: RMW-capable; false: plain reads only

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.val == b.val && a.tid == b.tid && a.rmw == b.rmw;
  }
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.val != b.val) return a.val < b.val;
    if (a.tid != b.tid) return a.tid < b.tid;
    return a.rmw < b.rmw;
  }
};

// A full memory snapshot a thread may observe, one cell per domain location.
struct PotStore {
  std::vector<Cell> cells;

  friend bool operator==(const PotStore& a, const PotStore& b) { return a.cells == b.cells; }
  friend bool operator!=(const PotStore& a, const PotStore& b) { return !(a == b); }
  friend bool operator<(const PotStore& a, const PotStore& b) { return a.cells < b.cells; }
};

using StoreList = std::vector<PotStore>;
using Potential = std::vector<StoreList>;  // sorted, duplicate-free
using PotentialMapping = std::map<Tid, Potential>;

std::size_t store_hash(const PotStore& s);
std::size_t mapping_hash(const PotentialMapping& d);

// Adapters for extended-expression evaluation.
class PotStoreEnv final : public StoreEnv {
 public:
  PotStoreEnv(const LocDomain& dom, const PotStore& store) : dom_(dom), store_(store) {}
  Val loc_val(Loc l) const override;
  bool flag_is_r(Loc l) const override;

 private:
  const LocDomain& dom_;
  const PotStore& store_;
};

// Subsequence order on store lists and its liftings (the order the lose step
// moves down along).
bool list_leq(const StoreList& smaller, const StoreList& larger);
bool pot_leq(const Potential& smaller, const Potential& larger);
bool map_leq(const PotentialMapping& smaller, const PotentialMapping& larger);

// Duplication order: larger arises from smaller by duplicating adjacent
// copies of existing stores.
bool dup_leq(const StoreList& smaller, const StoreList& larger);

// smaller embeds into larger with repeats allowed: a monotone map of
// positions that may reuse a position for adjacent equal stores. This is
// exactly "smaller is a duplication of some subsequence of larger".
bool embeds_with_repeats(const StoreList& smaller, const StoreList& larger);

bool valid_store_list(const LocDomain& dom, const StoreList& l);
bool validate_state(const LocDomain& dom, const PotentialMapping& d);

// Initial state: every thread holds the one-store list of the all-zero,
// all-RMW store attributed to the initializing thread.
PotentialMapping initial_sra(const LocDomain& dom, const std::vector<Tid>& tids, Tid init_tid,
                             const std::map<Loc, Val>* initial_values = nullptr);

// Sort, deduplicate, drop lists that are subsequences of other kept lists,
// and cap the antichain at max_size (0 = uncapped). Sets *truncated when the
// cap dropped anything.
Potential canonical_potential(Potential lists, std::size_t max_size, bool* truncated);

std::string store_to_string(const LocDomain& dom, const SymbolTable& syms, const PotStore& s);
std::string list_to_string(const LocDomain& dom, const SymbolTable& syms, const StoreList& l);
// Debug dump: one line per list, "tid: [x=0@t0:RMW, ...] | [...]", threads and
// lists in canonical order.
std::string mapping_to_string(const LocDomain& dom, const SymbolTable& syms,
                              const PotentialMapping& d);

}  // namespace sraw

#endif  // SRAW_POTENTIAL_HPP_
