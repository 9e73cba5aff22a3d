#include "sraw/scmem.hpp"

namespace sraw {

SCState initial_sc(const LocDomain& dom, const std::map<Loc, Val>* initial_values) {
  SCState s;
  s.mem.assign(dom.size(), 0);
  if (initial_values)
    for (const auto& [loc, val] : *initial_values) {
      int i = dom.index(loc);
      if (i >= 0) s.mem[static_cast<std::size_t>(i)] = val;
    }
  return s;
}

std::vector<SCState> sc_step(const LocDomain& dom, const SCState& m, Tid, const Label& l) {
  switch (l.kind) {
    case LabelKind::Read: {
      int i = dom.index(l.loc);
      if (m.mem[static_cast<std::size_t>(i)] != l.vr) return {};
      return {m};
    }
    case LabelKind::Write: {
      int i = dom.index(l.loc);
      SCState next = m;
      next.mem[static_cast<std::size_t>(i)] = l.vw;
      return {next};
    }
    case LabelKind::Rmw: {
      int i = dom.index(l.loc);
      if (m.mem[static_cast<std::size_t>(i)] != l.vr) return {};
      SCState next = m;
      next.mem[static_cast<std::size_t>(i)] = l.vw;
      return {next};
    }
    case LabelKind::Fork:
    case LabelKind::Join:
      return {m};
  }
  return {};
}

std::size_t sc_hash(const SCState& m) {
  std::size_t h = 0x5c;
  for (Val v : m.mem) hash_mix(h, static_cast<std::size_t>(v));
  return h;
}

}  // namespace sraw
