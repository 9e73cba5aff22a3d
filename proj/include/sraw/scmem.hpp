#ifndef SRAW_SCMEM_HPP_
#define SRAW_SCMEM_HPP_

#include <map>

#include "sraw/opsem.hpp"
#include "sraw/potential.hpp"

namespace sraw {

// Sequentially consistent memory: the most recent value per location.
struct SCState {
  std::vector<Val> mem;  // by LocDomain index

  friend bool operator==(const SCState& a, const SCState& b) { return a.mem == b.mem; }
  friend bool operator<(const SCState& a, const SCState& b) { return a.mem < b.mem; }
};

SCState initial_sc(const LocDomain& dom, const std::map<Loc, Val>* initial_values = nullptr);

// Step relation of the SC system; fork and join leave the state unchanged,
// reads and RMW-reads are guarded by the current value. Empty result means
// the label is disabled.
std::vector<SCState> sc_step(const LocDomain& dom, const SCState& m, Tid tau, const Label& l);

std::size_t sc_hash(const SCState& m);

}  // namespace sraw

#endif  // SRAW_SCMEM_HPP_
