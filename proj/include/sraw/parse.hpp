#ifndef SRAW_PARSE_HPP_
#define SRAW_PARSE_HPP_

#include <string>

#include "sraw/outline.hpp"

namespace sraw {

// Litmus files: optional init block, thread blocks, allow/forbid clauses.
// Plain programs are litmus files without clauses.
LitmusSpec parse_litmus(const std::string& text);

// Proof outline files.
ProofOutline parse_outline(const std::string& text);

// A standalone assertion against an existing symbol table. Names already
// interned keep their class; fresh names inside interval brackets become
// locations, fresh names elsewhere become registers.
AssertPtr parse_assertion_text(const std::string& text, SymbolTable& syms);

// A standalone "tid: stmt" instruction, for the single-triple checker.
std::pair<Tid, InstrCmd> parse_subject_text(const std::string& text, SymbolTable& syms);

}  // namespace sraw

#endif  // SRAW_PARSE_HPP_
