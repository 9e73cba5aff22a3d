#ifndef SRAW_OUTLINE_HPP_
#define SRAW_OUTLINE_HPP_

#include <optional>
#include <set>

#include "sraw/assertions.hpp"
#include "sraw/ast.hpp"

namespace sraw {

// Annotated program fragments: every statement carries the assertion holding
// just before it, and every sequence carries the assertion at its end.
struct OutlineSeq;

enum class OStmtKind { Instr, Skip, If, While, DoUntil };

struct OutlineStmt {
  OStmtKind kind;
  AssertPtr pre;
  InstrCmd instr{};                       // Instr
  ExprPtr cond;                           // If / While / DoUntil
  std::shared_ptr<OutlineSeq> body, alt;  // While/DoUntil body; If then/else
  SourcePos pos{};
};

struct OutlineSeq {
  std::vector<OutlineStmt> items;
  AssertPtr post;  // assertion at the end of the block

  const AssertPtr& pre() const { return items.empty() ? post : items.front().pre; }
};

struct ThreadOutline {
  Tid tid;
  OutlineSeq code;
};

struct GuaranteeOverride {
  AssertPtr guard;
  InstrCmd instr;
};

struct ProofOutline {
  std::shared_ptr<SymbolTable> syms;
  AssertPtr pre, post;
  std::vector<ThreadOutline> threads;
  std::set<Reg> aux;
  std::map<Loc, Val> initial;
  Tid init_tid{};
  std::map<Tid, std::vector<AssertPtr>> rely_override;
  std::map<Tid, std::vector<GuaranteeOverride>> guarantee_override;
};

// The executable program of an outline (do-until desugared), for exploration
// cross-checks and guarantee subjects.
CmdPtr outline_seq_to_cmd(const OutlineSeq& seq);
CommandPool outline_program(const ProofOutline& o);

}  // namespace sraw

#endif  // SRAW_OUTLINE_HPP_
