#include "sraw/srasteps.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace sraw {

namespace {

PotStore store_overwrite(const PotStore& s, int x, Val v, Tid tau) {
  PotStore out = s;
  out.cells[static_cast<std::size_t>(x)] = Cell{v, tau, true};
  return out;
}

PotStore store_flag_r(const PotStore& s, int x) {
  PotStore out = s;
  out.cells[static_cast<std::size_t>(x)].rmw = false;
  return out;
}

StoreList list_overwrite(const StoreList& l, int x, Val v, Tid tau) {
  StoreList out;
  out.reserve(l.size());
  for (const PotStore& s : l) out.push_back(store_overwrite(s, x, v, tau));
  return out;
}

bool embeds_into_any(const StoreList& b, const Potential& pot) {
  for (const StoreList& k : pot)
    if (embeds_with_repeats(b, k)) return true;
  return false;
}

}  // namespace

std::vector<std::pair<Val, Tid>> sra_read(const PotentialMapping& d, Tid tau, int loc_idx) {
  auto it = d.find(tau);
  if (it == d.end() || it->second.empty()) return {};
  const Potential& pot = it->second;
  const Cell& first = pot.front().front().cells[static_cast<std::size_t>(loc_idx)];
  for (const StoreList& l : pot) {
    const Cell& c = l.front().cells[static_cast<std::size_t>(loc_idx)];
    if (c.val != first.val || c.tid != first.tid) return {};
  }
  return {{first.val, first.tid}};
}

std::vector<SraReadOption> sra_read_options(const PotentialMapping& d, Tid tau, int loc_idx,
                                            bool rmw_only, const SraOptions& opts,
                                            SraTrunc* trunc) {
  std::vector<SraReadOption> out;
  auto it = d.find(tau);
  if (it == d.end()) return out;
  const Potential& pot = it->second;
  auto x = static_cast<std::size_t>(loc_idx);

  std::set<std::pair<Val, Tid>> candidates;
  for (const StoreList& l : pot)
    for (const PotStore& s : l) {
      const Cell& c = s.cells[x];
      if (rmw_only && !c.rmw) continue;
      candidates.insert({c.val, c.tid});
    }

  for (const auto& [v, writer] : candidates) {
    Potential cut;
    for (const StoreList& l : pot) {
      for (std::size_t i = 0; i < l.size(); ++i) {
        const Cell& c = l[i].cells[x];
        if (c.val == v && c.tid == writer && (!rmw_only || c.rmw)) {
          cut.emplace_back(l.begin() + static_cast<std::ptrdiff_t>(i), l.end());
          break;
        }
      }
    }
    if (cut.empty()) continue;
    bool capped = false;
    PotentialMapping after = d;
    after[tau] = canonical_potential(std::move(cut), opts.bounds.max_pot_size, &capped);
    if (capped && trunc) trunc->potential_capped = true;
    out.push_back({v, writer, std::move(after)});
  }
  return out;
}

namespace {

// Candidate replacement lists for a non-writer thread under a write to x:
// full prefix marked read-only, followed by a nonempty subsequence of the
// suffix overwritten with the new value, where that subsequence (before the
// overwrite) embeds into the writer's potential. One duplication of the seam
// element may bridge prefix and suffix.
void write_candidates_other(const StoreList& l, const Potential& writer_pot, int x, Val v,
                            Tid tau, const SraOptions& opts, SraTrunc* trunc,
                            std::vector<StoreList>& out) {
  const std::size_t n = l.size();
  auto emit = [&](std::size_t prefix_len, const StoreList& b) {
    StoreList cand;
    cand.reserve(prefix_len + b.size());
    for (std::size_t i = 0; i < prefix_len; ++i) cand.push_back(store_flag_r(l[i], x));
    for (const PotStore& s : b) cand.push_back(store_overwrite(s, x, v, tau));
    out.push_back(std::move(cand));
  };

  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t m = n - p;  // suffix length
    // plain splits: B is a nonempty subsequence of l[p..)
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      StoreList b;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t{1} << i)) b.push_back(l[p + i]);
      if (!opts.unsound_drop_writer_suffix_check && !embeds_into_any(b, writer_pot)) continue;
      emit(p, b);
    }
    // seam duplication: B starts with a copy of l[p-1]
    if (p >= 1) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        StoreList b;
        b.push_back(l[p - 1]);
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (std::size_t{1} << i)) b.push_back(l[p + i]);
        if (opts.bounds.max_list_len != 0 && p + b.size() > opts.bounds.max_list_len) {
          if (trunc) trunc->list_len_capped = true;
          continue;
        }
        if (!opts.unsound_drop_writer_suffix_check && !embeds_into_any(b, writer_pot)) continue;
        emit(p, b);
      }
    }
  }
}

}  // namespace

std::optional<PotentialMapping> sra_write(const PotentialMapping& d, Tid tau, int loc_idx, Val v,
                                          const SraOptions& opts, SraTrunc* trunc) {
  auto wit = d.find(tau);
  assert(wit != d.end());
  const Potential& writer_pot = wit->second;

  PotentialMapping next;
  for (const auto& [tid, pot] : d) {
    Potential lists;
    if (tid == tau) {
      for (const StoreList& l : pot) lists.push_back(list_overwrite(l, loc_idx, v, tau));
    } else {
      std::vector<StoreList> cands;
      for (const StoreList& l : pot)
        write_candidates_other(l, writer_pot, loc_idx, v, tau, opts, trunc, cands);
      if (cands.empty()) return std::nullopt;  // no derivable list: write disabled
      lists.assign(cands.begin(), cands.end());
    }
    bool capped = false;
    next[tid] = canonical_potential(std::move(lists), opts.bounds.max_pot_size, &capped);
    if (capped && trunc) trunc->potential_capped = true;
  }
  return next;
}

std::vector<std::pair<Val, PotentialMapping>> sra_rmw(const PotentialMapping& d, Tid tau,
                                                      int loc_idx, Val vw, const SraOptions& opts,
                                                      SraTrunc* trunc) {
  std::vector<std::pair<Val, PotentialMapping>> out;
  for (auto& opt : sra_read_options(d, tau, loc_idx, /*rmw_only=*/true, opts, trunc)) {
    auto w = sra_write(opt.after, tau, loc_idx, vw, opts, trunc);
    if (w) out.emplace_back(opt.v, std::move(*w));
  }
  return out;
}

PotentialMapping sra_fork(const PotentialMapping& d, Tid tau, Tid t1, Tid t2) {
  auto it = d.find(tau);
  assert(it != d.end());
  PotentialMapping next = d;
  Potential pot = it->second;
  next.erase(tau);
  next[t1] = pot;
  next[t2] = pot;
  return next;
}

std::optional<PotentialMapping> sra_join(const PotentialMapping& d, Tid tau, Tid t1, Tid t2) {
  auto i1 = d.find(t1);
  auto i2 = d.find(t2);
  assert(i1 != d.end() && i2 != d.end());
  Potential inter;
  for (const StoreList& l : i1->second)
    if (std::find(i2->second.begin(), i2->second.end(), l) != i2->second.end())
      inter.push_back(l);
  if (inter.empty()) return std::nullopt;
  PotentialMapping next = d;
  next.erase(t1);
  next.erase(t2);
  next[tau] = std::move(inter);
  return next;
}

std::vector<StoreList> all_sublists(const Potential& pot) {
  std::set<StoreList> seen;
  for (const StoreList& l : pot) {
    const std::size_t n = l.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      StoreList sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(l[i]);
      seen.insert(std::move(sub));
    }
  }
  return {seen.begin(), seen.end()};
}

PotentialMapping sra_join_meet(const LocDomain& dom, const PotentialMapping& d, Tid tau, Tid t1,
                               Tid t2, const SraOptions& opts, SraTrunc* trunc) {
  auto i1 = d.find(t1);
  auto i2 = d.find(t2);
  assert(i1 != d.end() && i2 != d.end());
  const PotStore& final_store = i1->second.front().back();
  Potential common;
  for (const StoreList& sub : all_sublists(i1->second)) {
    if (sub.back() != final_store) continue;
    if (!valid_store_list(dom, sub)) continue;
    bool in2 = false;
    for (const StoreList& k : i2->second)
      if (list_leq(sub, k)) {
        in2 = true;
        break;
      }
    if (in2) common.push_back(sub);
  }
  assert(!common.empty());  // the shared final store is always common
  PotentialMapping next = d;
  next.erase(t1);
  next.erase(t2);
  bool capped = false;
  next[tau] = canonical_potential(std::move(common), opts.bounds.max_pot_size, &capped);
  if (capped && trunc) trunc->potential_capped = true;
  return next;
}

std::vector<PotentialMapping> lose_successors(const LocDomain& dom, const PotentialMapping& d,
                                              std::size_t cap) {
  // Full enumeration of valid smaller mappings; intended for small states.
  std::vector<std::vector<Potential>> per_thread;
  std::vector<Tid> tids;
  for (const auto& [tid, pot] : d) {
    tids.push_back(tid);
    std::vector<StoreList> subs = all_sublists(pot);
    // all nonempty subsets of candidate lists
    std::vector<Potential> pots;
    const std::size_t n = subs.size();
    if (n > 16) throw std::invalid_argument("lose_successors: state too large to enumerate");
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Potential p;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) p.push_back(subs[i]);
      std::sort(p.begin(), p.end());
      pots.push_back(std::move(p));
    }
    per_thread.push_back(std::move(pots));
  }
  std::vector<PotentialMapping> out;
  std::vector<std::size_t> pick(per_thread.size(), 0);
  while (true) {
    PotentialMapping m;
    for (std::size_t i = 0; i < tids.size(); ++i) m[tids[i]] = per_thread[i][pick[i]];
    if (validate_state(dom, m)) {
      out.push_back(std::move(m));
      if (out.size() >= cap) return out;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == per_thread[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<PotentialMapping> dup_expand(const LocDomain& dom, const PotentialMapping& d,
                                         std::size_t max_list_len) {
  std::vector<PotentialMapping> out;
  for (const auto& [tid, pot] : d) {
    for (std::size_t li = 0; li < pot.size(); ++li) {
      const StoreList& l = pot[li];
      if (max_list_len != 0 && l.size() + 1 > max_list_len) continue;
      for (std::size_t i = 0; i < l.size(); ++i) {
        StoreList dup = l;
        dup.insert(dup.begin() + static_cast<std::ptrdiff_t>(i), l[i]);
        PotentialMapping next = d;
        Potential p = pot;
        p[li] = std::move(dup);
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        next[tid] = std::move(p);
        if (validate_state(dom, next)) out.push_back(std::move(next));
      }
    }
  }
  return out;
}

PotentialMapping canonicalize_mapping(PotentialMapping d, std::size_t max_pot_size,
                                      SraTrunc* trunc) {
  for (auto& [tid, pot] : d) {
    bool capped = false;
    pot = canonical_potential(std::move(pot), max_pot_size, &capped);
    if (capped && trunc) trunc->potential_capped = true;
  }
  return d;
}

}  // namespace sraw
