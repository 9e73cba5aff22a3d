#include "sraw/potential.hpp"

#include <algorithm>
#include <stdexcept>

namespace sraw {

std::size_t store_hash(const PotStore& s) {
  std::size_t h = 0xabcd;
  for (const Cell& c : s.cells) {
    hash_mix(h, static_cast<std::size_t>(c.val));
    hash_mix(h, c.tid.v);
    hash_mix(h, c.rmw ? 1u : 0u);
  }
  return h;
}

std::size_t mapping_hash(const PotentialMapping& d) {
  std::size_t h = 0x7731;
  for (const auto& [tid, pot] : d) {
    hash_mix(h, tid.v);
    for (const StoreList& l : pot) {
      hash_mix(h, l.size());
      for (const PotStore& s : l) hash_mix(h, store_hash(s));
    }
  }
  return h;
}

Val PotStoreEnv::loc_val(Loc l) const {
  int i = dom_.index(l);
  if (i < 0) throw std::logic_error("location outside store domain");
  return store_.cells[static_cast<std::size_t>(i)].val;
}

bool PotStoreEnv::flag_is_r(Loc l) const {
  int i = dom_.index(l);
  if (i < 0) throw std::logic_error("location outside store domain");
  return !store_.cells[static_cast<std::size_t>(i)].rmw;
}

bool list_leq(const StoreList& smaller, const StoreList& larger) {
  if (smaller.empty()) return false;  // lists are non-empty by construction
  std::size_t j = 0;
  for (std::size_t i = 0; i < larger.size() && j < smaller.size(); ++i)
    if (larger[i] == smaller[j]) ++j;
  return j == smaller.size();
}

bool pot_leq(const Potential& smaller, const Potential& larger) {
  for (const StoreList& ls : smaller) {
    bool found = false;
    for (const StoreList& ll : larger)
      if (list_leq(ls, ll)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool map_leq(const PotentialMapping& smaller, const PotentialMapping& larger) {
  for (const auto& [tid, pot] : larger) {
    auto it = smaller.find(tid);
    if (it == smaller.end()) return false;
    if (!pot_leq(it->second, pot)) return false;
  }
  return true;
}

namespace {

// smaller = s_1..s_m, larger = s_1^{k_1}..s_m^{k_m} with all k_i >= 1.
bool dup_match(const StoreList& s, std::size_t i, const StoreList& l, std::size_t j) {
  if (i == s.size()) return j == l.size();
  if (j == l.size()) return false;
  if (!(s[i] == l[j])) return false;
  // consume one copy; either stay on s[i] (more copies) or advance
  std::size_t j2 = j + 1;
  if (dup_match(s, i + 1, l, j2)) return true;
  while (j2 < l.size() && l[j2] == s[i]) {
    ++j2;
    if (dup_match(s, i + 1, l, j2)) return true;
  }
  return false;
}

}  // namespace

bool dup_leq(const StoreList& smaller, const StoreList& larger) {
  return dup_match(smaller, 0, larger, 0);
}

bool embeds_with_repeats(const StoreList& smaller, const StoreList& larger) {
  if (smaller.empty()) return true;
  std::size_t pos = 0;
  bool placed = false;
  for (const PotStore& s : smaller) {
    if (placed && larger[pos] == s) continue;  // reuse position for a repeat
    std::size_t q = placed ? pos + 1 : pos;
    while (q < larger.size() && !(larger[q] == s)) ++q;
    if (q == larger.size()) return false;
    pos = q;
    placed = true;
  }
  return true;
}

bool valid_store_list(const LocDomain& dom, const StoreList& l) {
  if (l.empty()) return false;
  for (const PotStore& s : l)
    if (s.cells.size() != dom.size()) return false;
  for (std::size_t x = 0; x < dom.size(); ++x) {
    bool seen_rmw = false;
    for (const PotStore& s : l) {
      if (seen_rmw && !s.cells[x].rmw) return false;  // flags are monotone
      seen_rmw = seen_rmw || s.cells[x].rmw;
    }
    if (!l.back().cells[x].rmw) return false;  // and set at the end
  }
  return true;
}

bool validate_state(const LocDomain& dom, const PotentialMapping& d) {
  if (d.empty()) return false;
  const PotStore* final_store = nullptr;
  for (const auto& [tid, pot] : d) {
    if (pot.empty()) return false;
    for (const StoreList& l : pot) {
      if (!valid_store_list(dom, l)) return false;
      if (final_store == nullptr)
        final_store = &l.back();
      else if (!(*final_store == l.back()))
        return false;  // all lists agree on the very final store
    }
  }
  return true;
}

PotentialMapping initial_sra(const LocDomain& dom, const std::vector<Tid>& tids, Tid init_tid,
                             const std::map<Loc, Val>* initial_values) {
  if (tids.empty()) throw std::invalid_argument("initial state needs at least one thread");
  PotStore s;
  s.cells.resize(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    Cell c;
    c.val = 0;
    c.tid = init_tid;
    c.rmw = true;
    if (initial_values) {
      auto it = initial_values->find(dom.locs[i]);
      if (it != initial_values->end()) c.val = it->second;
    }
    s.cells[i] = c;
  }
  PotentialMapping d;
  for (Tid t : tids) d[t] = Potential{StoreList{s}};
  return d;
}

Potential canonical_potential(Potential lists, std::size_t max_size, bool* truncated) {
  std::sort(lists.begin(), lists.end());
  lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
  // antichain: drop lists that are subsequences of another kept list
  // (subsequence order is antisymmetric, so after dedup domination is strict)
  Potential keep;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < lists.size() && !dominated; ++j)
      dominated = i != j && list_leq(lists[i], lists[j]);
    if (!dominated) keep.push_back(lists[i]);
  }
  if (max_size != 0 && keep.size() > max_size) {
    keep.resize(max_size);
    if (truncated) *truncated = true;
  }
  return keep;
}

std::string store_to_string(const LocDomain& dom, const SymbolTable& syms, const PotStore& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (i) out += ", ";
    const Cell& c = s.cells[i];
    out += syms.name(dom.locs[i]) + "=" + std::to_string(c.val) + "@" + syms.name(c.tid) + ":" +
           (c.rmw ? "RMW" : "R");
  }
  out += "]";
  return out;
}

std::string list_to_string(const LocDomain& dom, const SymbolTable& syms, const StoreList& l) {
  std::string out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += " | ";
    out += store_to_string(dom, syms, l[i]);
  }
  return out;
}

std::string mapping_to_string(const LocDomain& dom, const SymbolTable& syms,
                              const PotentialMapping& d) {
  std::string out;
  for (const auto& [tid, pot] : d)
    for (const StoreList& l : pot)
      out += syms.name(tid) + ": " + list_to_string(dom, syms, l) + "\n";
  return out;
}

}  // namespace sraw
