#include "sraw/outline.hpp"

namespace sraw {

namespace {

CmdPtr stmt_to_cmd(const OutlineStmt& st) {
  switch (st.kind) {
    case OStmtKind::Instr:
      return mk_instr(st.instr, st.pos);
    case OStmtKind::Skip:
      return mk_skip();
    case OStmtKind::If:
      return mk_if(st.cond, outline_seq_to_cmd(*st.body),
                   st.alt ? outline_seq_to_cmd(*st.alt) : mk_skip(), st.pos);
    case OStmtKind::While:
      return mk_while(st.cond, outline_seq_to_cmd(*st.body), st.pos);
    case OStmtKind::DoUntil: {
      CmdPtr body = outline_seq_to_cmd(*st.body);
      return mk_seq(body, mk_while(mk_not(st.cond), body, st.pos));
    }
  }
  return mk_skip();
}

}  // namespace

CmdPtr outline_seq_to_cmd(const OutlineSeq& seq) {
  if (seq.items.empty()) return mk_skip();
  CmdPtr out = stmt_to_cmd(seq.items.back());
  for (std::size_t i = seq.items.size() - 1; i-- > 0;)
    out = mk_seq(stmt_to_cmd(seq.items[i]), out);
  return out;
}

CommandPool outline_program(const ProofOutline& o) {
  CommandPool pool;
  for (const ThreadOutline& t : o.threads) pool[t.tid] = outline_seq_to_cmd(t.code);
  return pool;
}

}  // namespace sraw
