#ifndef SRAW_AST_HPP_
#define SRAW_AST_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sraw/expr.hpp"

namespace sraw {

enum class PrimKind { Assign, Store, Load, Swap };

struct PrimCmd {
  PrimKind kind;
  Reg reg{};      // Assign, Load
  Loc loc{};      // Store, Load, Swap
  ExprPtr expr;   // Assign, Store, Swap
};

// A primitive command bundled with the ghost multi-assignment that executes
// atomically with it.
struct InstrCmd {
  PrimCmd prim;
  std::vector<std::pair<Reg, ExprPtr>> aux;  // applied in order after prim
};

// Deadend marks a loop iteration beyond the unroll budget: it has no steps
// and is not skip, so paths reaching it are pruned and flagged.
enum class CmdKind { Instr, Skip, Seq, If, While, Par, Deadend };

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Cmd {
  CmdKind kind;
  InstrCmd instr{};          // Instr
  ExprPtr cond;              // If, While
  CmdPtr c1, c2;             // Seq, If (then/else), While (body in c1), Par
  Tid t1{}, t2{};            // Par
  SourcePos pos{};
  std::size_t cached_hash = 0;
};

CmdPtr mk_skip();
CmdPtr mk_deadend();
CmdPtr mk_instr(InstrCmd ic, SourcePos pos = {});
CmdPtr mk_prim(PrimCmd pc, SourcePos pos = {});
CmdPtr mk_seq(CmdPtr a, CmdPtr b);
CmdPtr mk_if(ExprPtr cond, CmdPtr then_c, CmdPtr else_c, SourcePos pos = {});
CmdPtr mk_while(ExprPtr cond, CmdPtr body, SourcePos pos = {});
CmdPtr mk_par(Tid t1, CmdPtr c1, Tid t2, CmdPtr c2, SourcePos pos = {});

bool is_skip(const CmdPtr& c);
bool cmd_equal(const CmdPtr& a, const CmdPtr& b);
std::size_t cmd_hash(const CmdPtr& c);

// All thread identifiers syntactically occurring in c.
void collect_tids(const CmdPtr& c, std::set<Tid>& out);
void collect_cmd_fv(const CmdPtr& c, FvSet& out);
void collect_written_regs(const CmdPtr& c, std::set<Reg>& out);
void collect_store_values(const CmdPtr& c, std::set<Val>& out);
std::size_t count_write_instrs(const CmdPtr& c);  // stores + swaps

// Well-formedness: nested parallel compositions use distinct, disjoint
// thread-id sets.
bool well_formed(const CmdPtr& c);

using CommandPool = std::map<Tid, CmdPtr>;

bool well_formed(const CommandPool& pool);
bool all_skip(const CommandPool& pool);

// Deletes ghost assignments to registers in z. Throws std::invalid_argument
// if a z-register is read by retained code or assigned outside the ghost
// component.
CmdPtr remove_aux(const CmdPtr& c, const std::set<Reg>& z);

struct LitmusClause {
  bool allow = false;  // false: forbid
  ExprPtr expr;
};

struct LitmusSpec {
  std::shared_ptr<SymbolTable> syms;
  CommandPool program;
  std::map<Loc, Val> initial;  // absent locations start at 0
  std::vector<LitmusClause> clauses;
  Tid init_tid{};  // distinguished initializing thread
};

std::string prim_to_string(const PrimCmd& p, const SymbolTable& syms);
std::string instr_to_string(const InstrCmd& ic, const SymbolTable& syms);
std::string cmd_to_string(const CmdPtr& c, const SymbolTable& syms, int indent = 0);
std::string pool_to_string(const CommandPool& pool, const SymbolTable& syms);

}  // namespace sraw

#endif  // SRAW_AST_HPP_
