#ifndef SRAW_BASICS_HPP_
#define SRAW_BASICS_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sraw {

using Val = std::int64_t;

inline bool truthy(Val v) { return v != 0; }

// Strong id types for the three identifier namespaces. Ids index into the
// SymbolTable that owns the names.
template <class Tag>
struct Id {
  std::uint32_t v = 0;
  friend bool operator==(Id a, Id b) { return a.v == b.v; }
  friend bool operator!=(Id a, Id b) { return a.v != b.v; }
  friend bool operator<(Id a, Id b) { return a.v < b.v; }
};

struct LocTag {};
struct RegTag {};
struct TidTag {};

using Loc = Id<LocTag>;
using Reg = Id<RegTag>;
using Tid = Id<TidTag>;

class SymbolTable {
 public:
  Loc loc(const std::string& name) { return Loc{intern(locs_, loc_names_, name)}; }
  Reg reg(const std::string& name) { return Reg{intern(regs_, reg_names_, name)}; }
  Tid tid(const std::string& name) { return Tid{intern(tids_, tid_names_, name)}; }

  const std::string& name(Loc l) const { return loc_names_.at(l.v); }
  const std::string& name(Reg r) const { return reg_names_.at(r.v); }
  const std::string& name(Tid t) const { return tid_names_.at(t.v); }

  bool has_loc(const std::string& name) const { return locs_.count(name) != 0; }
  bool has_reg(const std::string& name) const { return regs_.count(name) != 0; }
  bool has_tid(const std::string& name) const { return tids_.count(name) != 0; }

  std::size_t num_locs() const { return loc_names_.size(); }
  std::size_t num_regs() const { return reg_names_.size(); }
  std::size_t num_tids() const { return tid_names_.size(); }

  std::vector<Loc> all_locs() const {
    std::vector<Loc> out;
    for (std::uint32_t i = 0; i < loc_names_.size(); ++i) out.push_back(Loc{i});
    return out;
  }
  std::vector<Reg> all_regs() const {
    std::vector<Reg> out;
    for (std::uint32_t i = 0; i < reg_names_.size(); ++i) out.push_back(Reg{i});
    return out;
  }
  std::vector<Tid> all_tids() const {
    std::vector<Tid> out;
    for (std::uint32_t i = 0; i < tid_names_.size(); ++i) out.push_back(Tid{i});
    return out;
  }

 private:
  static std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& m,
                              std::vector<std::string>& names, const std::string& name) {
    auto it = m.find(name);
    if (it != m.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names.size());
    names.push_back(name);
    m.emplace(name, id);
    return id;
  }

  std::unordered_map<std::string, std::uint32_t> locs_, regs_, tids_;
  std::vector<std::string> loc_names_, reg_names_, tid_names_;
};

inline void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

struct SourcePos {
  int line = 0;
  int col = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(pos.line) + ":" +
                           std::to_string(pos.col) + ": " + msg),
        pos(pos) {}
  SourcePos pos;
};

}  // namespace sraw

template <class Tag>
struct std::hash<sraw::Id<Tag>> {
  std::size_t operator()(sraw::Id<Tag> id) const { return std::hash<std::uint32_t>{}(id.v); }
};

#endif  // SRAW_BASICS_HPP_
