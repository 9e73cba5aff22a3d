#include "sraw/parse.hpp"

#include <cctype>
#include <optional>

namespace sraw {

namespace {

enum class Tok {
  Ident,
  Int,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Less,
  Greater,
  Leq,
  Geq,
  Comma,
  Semi,
  Colon,
  Assign,   // :=
  Eq,       // =
  Neq,      // !=
  Bang,     // !
  AndAnd,
  OrOr,
  Models,   // |=
  Implies,  // =>
  Plus,
  Minus,
  Star,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Val value = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { tokenize(); }

  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t, Val v = 0) {
      toks_.push_back({k, std::move(t), v, {line, col}});
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col;
        ++i;
        continue;
      }
      if (c == '#' || (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/')) {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && i + 1 < text_.size() && text_[i + 1] == b;
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        push(Tok::Ident, text_.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        std::string t = text_.substr(i, j - i);
        push(Tok::Int, t, std::stoll(t));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (two(':', '=')) {
        push(Tok::Assign, ":=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('!', '=')) {
        push(Tok::Neq, "!=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('&', '&')) {
        push(Tok::AndAnd, "&&");
        i += 2;
        col += 2;
        continue;
      }
      if (two('|', '|')) {
        push(Tok::OrOr, "||");
        i += 2;
        col += 2;
        continue;
      }
      if (two('|', '=')) {
        push(Tok::Models, "|=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('=', '>')) {
        push(Tok::Implies, "=>");
        i += 2;
        col += 2;
        continue;
      }
      if (two('<', '=')) {
        push(Tok::Leq, "<=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('>', '=')) {
        push(Tok::Geq, ">=");
        i += 2;
        col += 2;
        continue;
      }
      switch (c) {
        case '{':
          push(Tok::LBrace, "{");
          break;
        case '}':
          push(Tok::RBrace, "}");
          break;
        case '(':
          push(Tok::LParen, "(");
          break;
        case ')':
          push(Tok::RParen, ")");
          break;
        case '[':
          push(Tok::LBracket, "[");
          break;
        case ']':
          push(Tok::RBracket, "]");
          break;
        case '<':
          push(Tok::Less, "<");
          break;
        case '>':
          push(Tok::Greater, ">");
          break;
        case ',':
          push(Tok::Comma, ",");
          break;
        case ';':
          push(Tok::Semi, ";");
          break;
        case ':':
          push(Tok::Colon, ":");
          break;
        case '=':
          push(Tok::Eq, "=");
          break;
        case '!':
          push(Tok::Bang, "!");
          break;
        case '+':
          push(Tok::Plus, "+");
          break;
        case '-':
          push(Tok::Minus, "-");
          break;
        case '*':
          push(Tok::Star, "*");
          break;
        default:
          throw ParseError({line, col}, std::string("unexpected character '") + c + "'");
      }
      ++i;
      ++col;
    }
    toks_.push_back({Tok::End, "", 0, {line, col}});
  }

  const std::string& text_;
  std::vector<Token> toks_;
};

// Identifier classes resolved by a pre-scan over the token stream: locations
// appear in init blocks, as load sources, or as swap targets; thread ids
// follow the thread/par keywords; everything else assigned or read is a
// register.
struct NameClasses {
  std::set<std::string> locs, tids, regs;

  void classify(const std::vector<Token>& toks) {
    auto is_kw = [](const Token& t, const char* kw) {
      return t.kind == Tok::Ident && t.text == kw;
    };
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const Token& t = toks[i];
      if (is_kw(t, "init") && i + 1 < toks.size() && toks[i + 1].kind == Tok::Colon) {
        std::size_t j = i + 2;
        while (j + 1 < toks.size() && toks[j].kind == Tok::Ident &&
               toks[j + 1].kind == Tok::Eq) {
          locs.insert(toks[j].text);
          j += 2;
          if (j < toks.size() && (toks[j].kind == Tok::Int || toks[j].kind == Tok::Minus)) {
            j += toks[j].kind == Tok::Minus ? 2 : 1;
          }
          if (j < toks.size() && toks[j].kind == Tok::Comma)
            ++j;
          else
            break;
        }
      }
      if (is_kw(t, "load") && i + 3 < toks.size() && toks[i + 1].kind == Tok::Ident &&
          toks[i + 2].kind == Tok::Assign && toks[i + 3].kind == Tok::Ident) {
        regs.insert(toks[i + 1].text);
        locs.insert(toks[i + 3].text);
      }
      if (is_kw(t, "swap") && i + 1 < toks.size() && toks[i + 1].kind == Tok::Ident)
        locs.insert(toks[i + 1].text);
      if ((is_kw(t, "thread") || is_kw(t, "par") || is_kw(t, "rely") || is_kw(t, "guarantee")) &&
          i + 1 < toks.size() && toks[i + 1].kind == Tok::Ident)
        tids.insert(toks[i + 1].text);
      if (t.kind == Tok::OrOr && i + 1 < toks.size() && toks[i + 1].kind == Tok::Ident &&
          i + 2 < toks.size() && toks[i + 2].kind == Tok::LBrace)
        tids.insert(toks[i + 1].text);
      // pot assertions name threads on the left of |=
      if (t.kind == Tok::Models && i >= 1 && toks[i - 1].kind == Tok::Ident)
        tids.insert(toks[i - 1].text);
    }
    for (const auto& n : locs)
      if (tids.count(n) || regs.count(n))
        throw ParseError({0, 0}, "identifier '" + n + "' used in more than one class");
    for (const auto& n : tids)
      if (regs.count(n))
        throw ParseError({0, 0}, "identifier '" + n + "' used in more than one class");
  }
};

class Parser {
 public:
  Parser(const std::string& text, std::shared_ptr<SymbolTable> syms)
      : lexer_(text), syms_(std::move(syms)) {
    classes_.classify(lexer_.tokens());
    // names already interned keep their class
    for (Loc l : syms_->all_locs()) classes_.locs.insert(syms_->name(l));
    for (Reg r : syms_->all_regs()) classes_.regs.insert(syms_->name(r));
    for (Tid t : syms_->all_tids()) classes_.tids.insert(syms_->name(t));
  }

  // ---- token plumbing ----
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, lexer_.tokens().size() - 1);
    return lexer_.tokens()[i];
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  bool eat_kw(const char* kw) {
    if (!at_kw(kw)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!eat(k)) throw ParseError(peek().pos, std::string("expected ") + what);
  }
  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) throw ParseError(peek().pos, std::string("expected ") + what);
    return next().text;
  }

  bool is_loc_name(const std::string& n) const { return classes_.locs.count(n) != 0; }
  bool is_tid_name(const std::string& n) const { return classes_.tids.count(n) != 0; }

  // ---- expressions ----
  // in_interval: fresh names inside [ ] default to locations
  ExprPtr parse_expr(bool allow_locs, bool in_interval = false) {
    return parse_or(allow_locs, in_interval);
  }

  // a pot assertion begins two tokens ahead; expression-level connectives
  // must not swallow it
  bool pot_follows() const {
    return peek(1).kind == Tok::Ident && peek(2).kind == Tok::Models;
  }

  ExprPtr parse_or(bool locs, bool ival) {
    ExprPtr e = parse_and(locs, ival);
    while (at(Tok::OrOr) && !pot_follows()) {
      next();
      e = mk_bin(ExprOp::Or, e, parse_and(locs, ival));
    }
    return e;
  }
  ExprPtr parse_and(bool locs, bool ival) {
    ExprPtr e = parse_cmp(locs, ival);
    while (at(Tok::AndAnd) && !pot_follows()) {
      next();
      e = mk_bin(ExprOp::And, e, parse_cmp(locs, ival));
    }
    return e;
  }
  ExprPtr parse_cmp(bool locs, bool ival) {
    ExprPtr e = parse_add(locs, ival);
    for (;;) {
      if (eat(Tok::Eq))
        e = mk_bin(ExprOp::Eq, e, parse_add(locs, ival));
      else if (eat(Tok::Neq))
        e = mk_bin(ExprOp::Ne, e, parse_add(locs, ival));
      else if (at(Tok::Less)) {
        next();
        e = mk_bin(ExprOp::Lt, e, parse_add(locs, ival));
      } else if (eat(Tok::Leq))
        e = mk_bin(ExprOp::Le, e, parse_add(locs, ival));
      else if (at(Tok::Greater) && !no_greater_) {
        next();
        e = mk_bin(ExprOp::Lt, parse_add(locs, ival), e);
      } else if (eat(Tok::Geq)) {
        ExprPtr rhs = parse_add(locs, ival);
        e = mk_bin(ExprOp::Le, rhs, e);
      } else
        break;
    }
    return e;
  }
  ExprPtr parse_add(bool locs, bool ival) {
    ExprPtr e = parse_mul(locs, ival);
    for (;;) {
      if (eat(Tok::Plus))
        e = mk_bin(ExprOp::Add, e, parse_mul(locs, ival));
      else if (eat(Tok::Minus))
        e = mk_bin(ExprOp::Sub, e, parse_mul(locs, ival));
      else
        break;
    }
    return e;
  }
  ExprPtr parse_mul(bool locs, bool ival) {
    ExprPtr e = parse_unary(locs, ival);
    while (eat(Tok::Star)) e = mk_bin(ExprOp::Mul, e, parse_unary(locs, ival));
    return e;
  }
  ExprPtr parse_unary(bool locs, bool ival) {
    if (eat(Tok::Bang)) return mk_not(parse_unary(locs, ival));
    if (eat(Tok::Minus)) return mk_bin(ExprOp::Sub, mk_const(0), parse_unary(locs, ival));
    return parse_primary(locs, ival);
  }
  ExprPtr parse_primary(bool locs, bool ival) {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      return mk_const(t.value);
    }
    if (t.kind == Tok::LParen) {
      next();
      ExprPtr e = parse_expr(locs, ival);
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        next();
        return mk_true();
      }
      if (t.text == "false") {
        next();
        return mk_false();
      }
      if (t.text == "R" && peek(1).kind == Tok::LParen && locs) {
        next();
        next();
        std::string n = expect_ident("location name");
        expect(Tok::RParen, "')'");
        return mk_rmw_flag(syms_->loc(n));
      }
      next();
      if (is_loc_name(t.text)) {
        if (!locs)
          throw ParseError(t.pos, "location '" + t.text + "' used in a register expression");
        return mk_loc(syms_->loc(t.text));
      }
      if (is_tid_name(t.text))
        throw ParseError(t.pos, "thread id '" + t.text + "' used in an expression");
      if (ival && locs && !syms_->has_reg(t.text)) {
        // fresh name inside an interval bracket: location by default
        classes_.locs.insert(t.text);
        return mk_loc(syms_->loc(t.text));
      }
      classes_.regs.insert(t.text);
      return mk_reg(syms_->reg(t.text));
    }
    throw ParseError(t.pos, "expected an expression, found '" + t.text + "'");
  }

  // ---- statements ----
  CmdPtr parse_stmts(bool top_thread) {
    std::vector<CmdPtr> seq;
    bool ended_with_par = false;
    for (;;) {
      while (eat(Tok::Semi)) {
      }
      if (at(Tok::RBrace) || at(Tok::End)) break;
      if (ended_with_par)
        throw ParseError(peek().pos, "parallel composition must end its block");
      CmdPtr c = parse_stmt();
      ended_with_par = c->kind == CmdKind::Par;
      seq.push_back(std::move(c));
      if (!at(Tok::Semi) && !at(Tok::RBrace) && !at(Tok::End))
        throw ParseError(peek().pos, "expected ';' or '}'");
    }
    (void)top_thread;
    if (seq.empty()) return mk_skip();
    CmdPtr out = seq.back();
    for (std::size_t i = seq.size() - 1; i-- > 0;) out = mk_seq(seq[i], out);
    return out;
  }

  CmdPtr parse_stmt() {
    SourcePos pos = peek().pos;
    if (eat_kw("skip")) return mk_skip();
    if (at_kw("if")) {
      next();
      ExprPtr cond = parse_expr(false);
      expect(Tok::LBrace, "'{'");
      CmdPtr then_c = parse_stmts(false);
      expect(Tok::RBrace, "'}'");
      CmdPtr else_c = mk_skip();
      if (eat_kw("else")) {
        expect(Tok::LBrace, "'{'");
        else_c = parse_stmts(false);
        expect(Tok::RBrace, "'}'");
      }
      return mk_if(cond, then_c, else_c, pos);
    }
    if (at_kw("while")) {
      next();
      ExprPtr cond = parse_expr(false);
      expect(Tok::LBrace, "'{'");
      CmdPtr body = parse_stmts(false);
      expect(Tok::RBrace, "'}'");
      return mk_while(cond, body, pos);
    }
    if (at_kw("do")) {
      next();
      expect(Tok::LBrace, "'{'");
      CmdPtr body = parse_stmts(false);
      expect(Tok::RBrace, "'}'");
      if (!eat_kw("until")) throw ParseError(peek().pos, "expected 'until'");
      ExprPtr cond = parse_expr(false);
      // do C until e == C ; while !e do C
      return mk_seq(body, mk_while(mk_not(cond), body, pos));
    }
    if (at_kw("par")) {
      next();
      std::string n1 = expect_ident("thread id");
      expect(Tok::LBrace, "'{'");
      CmdPtr c1 = parse_stmts(false);
      expect(Tok::RBrace, "'}'");
      expect(Tok::OrOr, "'||'");
      std::string n2 = expect_ident("thread id");
      expect(Tok::LBrace, "'{'");
      CmdPtr c2 = parse_stmts(false);
      expect(Tok::RBrace, "'}'");
      return mk_par(syms_->tid(n1), c1, syms_->tid(n2), c2, pos);
    }
    if (at(Tok::Less)) {
      next();
      no_greater_ = true;
      InstrCmd ic;
      ic.prim = parse_basic_prim();
      while (eat(Tok::Comma)) {
        std::string rn = expect_ident("register name");
        if (is_loc_name(rn))
          throw ParseError(pos, "ghost assignment target '" + rn + "' is a location");
        expect(Tok::Assign, "':='");
        classes_.regs.insert(rn);
        ic.aux.emplace_back(syms_->reg(rn), parse_expr(false));
      }
      no_greater_ = false;
      expect(Tok::Greater, "'>'");
      for (std::size_t i = 0; i < ic.aux.size(); ++i)
        for (std::size_t j = i + 1; j < ic.aux.size(); ++j)
          if (ic.aux[i].first == ic.aux[j].first)
            throw ParseError(pos, "ghost registers must be pairwise distinct");
      return mk_instr(std::move(ic), pos);
    }
    return mk_prim(parse_basic_prim(), pos);
  }

  PrimCmd parse_basic_prim() {
    SourcePos pos = peek().pos;
    if (eat_kw("load")) {
      std::string rn = expect_ident("register name");
      expect(Tok::Assign, "':='");
      std::string ln = expect_ident("location name");
      if (!is_loc_name(ln))
        throw ParseError(pos, "identifier '" + ln + "' has no location class");
      PrimCmd p;
      p.kind = PrimKind::Load;
      p.reg = syms_->reg(rn);
      p.loc = syms_->loc(ln);
      classes_.regs.insert(rn);
      return p;
    }
    if (eat_kw("swap")) {
      std::string ln = expect_ident("location name");
      PrimCmd p;
      p.kind = PrimKind::Swap;
      p.loc = syms_->loc(ln);
      p.expr = parse_expr(false);
      return p;
    }
    std::string n = expect_ident("statement");
    expect(Tok::Assign, "':='");
    ExprPtr e = parse_expr(false);
    PrimCmd p;
    if (is_loc_name(n)) {
      p.kind = PrimKind::Store;
      p.loc = syms_->loc(n);
    } else if (is_tid_name(n)) {
      throw ParseError(pos, "identifier '" + n + "' has no register or location class");
    } else {
      p.kind = PrimKind::Assign;
      p.reg = syms_->reg(n);
      classes_.regs.insert(n);
    }
    p.expr = e;
    return p;
  }

  // ---- assertions ----
  AssertPtr parse_assertion() {
    AssertPtr lhs = parse_assert_or();
    if (eat(Tok::Implies)) {
      ExprPtr e = assert_to_expr(lhs);
      if (!e)
        throw ParseError(peek().pos, "left side of '=>' must be a register expression");
      return mk_implies(e, parse_assertion());
    }
    return lhs;
  }

  AssertPtr parse_assert_or() {
    AssertPtr a = parse_assert_and();
    while (eat(Tok::OrOr)) a = mk_or(a, parse_assert_and());
    return a;
  }

  AssertPtr parse_assert_and() {
    AssertPtr a = parse_assert_atom();
    while (eat(Tok::AndAnd)) a = mk_and(a, parse_assert_atom());
    return a;
  }

  AssertPtr parse_assert_atom() {
    // pot assertion: tid |= interval
    if (at(Tok::Ident) && peek(1).kind == Tok::Models) {
      std::string tn = expect_ident("thread id");
      next();  // |=
      classes_.tids.insert(tn);
      IntervalPtr i = parse_interval();
      return mk_pot(syms_->tid(tn), i);
    }
    if (at(Tok::LParen)) {
      // backtrack between a parenthesized expression and (assertion)
      std::size_t save = pos_;
      try {
        ExprPtr e = parse_expr(false);
        return mk_expr_assert(e);
      } catch (const ParseError&) {
        pos_ = save;
      }
      next();  // (
      AssertPtr a = parse_assertion();
      expect(Tok::RParen, "')'");
      return a;
    }
    // expressions stop below && and || so assertion connectives see them
    return mk_expr_assert(parse_cmp(false, false));
  }

  IntervalPtr parse_interval() { return parse_interval_chop(); }

  IntervalPtr parse_interval_chop() {
    IntervalPtr i = parse_interval_or();
    if (eat(Tok::Semi)) return mk_ichop(i, parse_interval_chop());
    return i;
  }
  IntervalPtr parse_interval_or() {
    IntervalPtr i = parse_interval_and();
    while (at(Tok::OrOr) && peek(1).kind != Tok::Models) {
      next();
      i = mk_ior(i, parse_interval_and());
    }
    return i;
  }
  IntervalPtr parse_interval_and() {
    IntervalPtr i = parse_interval_atom();
    while (eat(Tok::AndAnd)) i = mk_iand(i, parse_interval_atom());
    return i;
  }
  IntervalPtr parse_interval_atom() {
    if (eat(Tok::LBracket)) {
      ExprPtr e = parse_expr(true, true);
      expect(Tok::RBracket, "']'");
      return mk_bracket(e);
    }
    if (eat(Tok::LParen)) {
      IntervalPtr i = parse_interval();
      expect(Tok::RParen, "')'");
      return i;
    }
    throw ParseError(peek().pos, "expected '[' or '(' in an interval assertion");
  }

  static ExprPtr assert_to_expr(const AssertPtr& a) {
    switch (a->kind) {
      case AssertKind::Expr:
        return a->expr;
      case AssertKind::And: {
        ExprPtr l = assert_to_expr(a->a), r = assert_to_expr(a->b);
        return l && r ? mk_bin(ExprOp::And, l, r) : nullptr;
      }
      case AssertKind::Or: {
        ExprPtr l = assert_to_expr(a->a), r = assert_to_expr(a->b);
        return l && r ? mk_bin(ExprOp::Or, l, r) : nullptr;
      }
      default:
        return nullptr;
    }
  }

  // ---- files ----
  std::map<Loc, Val> parse_init_block() {
    std::map<Loc, Val> init;
    if (eat_kw("init")) {
      expect(Tok::Colon, "':'");
      for (;;) {
        std::string n = expect_ident("location name");
        expect(Tok::Eq, "'='");
        bool neg = eat(Tok::Minus);
        if (!at(Tok::Int)) throw ParseError(peek().pos, "expected an integer");
        Val v = next().value;
        init[syms_->loc(n)] = neg ? -v : v;
        if (!eat(Tok::Comma)) break;
      }
      eat(Tok::Semi);
    }
    return init;
  }

  LitmusSpec parse_litmus_file() {
    LitmusSpec spec;
    spec.syms = syms_;
    spec.init_tid = syms_->tid("t0");
    spec.initial = parse_init_block();
    while (at_kw("thread")) {
      next();
      std::string tn = expect_ident("thread id");
      if (tn == "t0") throw ParseError(peek().pos, "'t0' is reserved for the initializer");
      Tid tid = syms_->tid(tn);
      if (spec.program.count(tid))
        throw ParseError(peek().pos, "duplicate thread id '" + tn + "'");
      expect(Tok::LBrace, "'{'");
      CmdPtr body = parse_stmts(true);
      expect(Tok::RBrace, "'}'");
      spec.program.emplace(tid, std::move(body));
    }
    if (spec.program.empty()) throw ParseError(peek().pos, "expected at least one thread");
    while (at_kw("allow") || at_kw("forbid")) {
      bool allow = peek().text == "allow";
      next();
      expect(Tok::Colon, "':'");
      LitmusClause cl;
      cl.allow = allow;
      cl.expr = parse_expr(false);
      spec.clauses.push_back(std::move(cl));
    }
    if (!at(Tok::End)) throw ParseError(peek().pos, "trailing input after litmus spec");
    if (!well_formed(spec.program))
      throw ParseError({0, 0}, "program is not well formed (thread ids reused)");
    return spec;
  }

  // annotated block: { A } stmt ; { A } stmt ; ... ; { A }
  OutlineSeq parse_outline_seq() {
    OutlineSeq seq;
    AssertPtr pending;  // assertion before the next statement
    for (;;) {
      while (eat(Tok::Semi)) {
      }
      if (at(Tok::LBrace)) {
        if (pending)
          throw ParseError(peek().pos,
                           "two assertions in a row; weakenings belong in triple checks");
        next();
        pending = parse_assertion();
        expect(Tok::RBrace, "'}'");
        continue;
      }
      if (at(Tok::RBrace) || at(Tok::End)) {
        if (!pending)
          throw ParseError(peek().pos, "annotated block must end with an assertion");
        seq.post = pending;
        return seq;
      }
      if (!pending)
        throw ParseError(peek().pos, "statement without a preceding assertion");
      OutlineStmt st = parse_outline_stmt();
      st.pre = pending;
      pending = nullptr;
      seq.items.push_back(std::move(st));
    }
  }

  OutlineStmt parse_outline_stmt() {
    OutlineStmt st;
    st.pos = peek().pos;
    if (at_kw("if")) {
      next();
      st.kind = OStmtKind::If;
      st.cond = parse_expr(false);
      expect(Tok::LBrace, "'{'");
      st.body = std::make_shared<OutlineSeq>(parse_outline_seq());
      expect(Tok::RBrace, "'}'");
      if (eat_kw("else")) {
        expect(Tok::LBrace, "'{'");
        st.alt = std::make_shared<OutlineSeq>(parse_outline_seq());
        expect(Tok::RBrace, "'}'");
      }
      return st;
    }
    if (at_kw("while")) {
      next();
      st.kind = OStmtKind::While;
      st.cond = parse_expr(false);
      expect(Tok::LBrace, "'{'");
      st.body = std::make_shared<OutlineSeq>(parse_outline_seq());
      expect(Tok::RBrace, "'}'");
      return st;
    }
    if (at_kw("do")) {
      next();
      st.kind = OStmtKind::DoUntil;
      expect(Tok::LBrace, "'{'");
      st.body = std::make_shared<OutlineSeq>(parse_outline_seq());
      expect(Tok::RBrace, "'}'");
      if (!eat_kw("until")) throw ParseError(peek().pos, "expected 'until'");
      st.cond = parse_expr(false);
      return st;
    }
    if (at_kw("skip")) {
      next();
      st.kind = OStmtKind::Skip;
      return st;
    }
    CmdPtr c = parse_stmt();
    if (c->kind != CmdKind::Instr)
      throw ParseError(st.pos, "unsupported statement in a proof outline");
    st.kind = OStmtKind::Instr;
    st.instr = c->instr;
    return st;
  }

  ProofOutline parse_outline_file() {
    ProofOutline o;
    o.syms = syms_;
    o.init_tid = syms_->tid("t0");
    for (;;) {
      if (at_kw("aux")) {
        next();
        for (;;) {
          std::string rn = expect_ident("register name");
          classes_.regs.insert(rn);
          o.aux.insert(syms_->reg(rn));
          if (!eat(Tok::Comma)) break;
        }
        eat(Tok::Semi);
        continue;
      }
      if (at_kw("init")) {
        o.initial = parse_init_block();
        continue;
      }
      break;
    }
    if (!eat_kw("pre")) throw ParseError(peek().pos, "expected 'pre'");
    expect(Tok::LBrace, "'{'");
    o.pre = parse_assertion();
    expect(Tok::RBrace, "'}'");
    while (at_kw("thread") || at_kw("rely") || at_kw("guarantee")) {
      if (eat_kw("thread")) {
        ThreadOutline t;
        std::string tn = expect_ident("thread id");
        if (tn == "t0") throw ParseError(peek().pos, "'t0' is reserved for the initializer");
        t.tid = syms_->tid(tn);
        expect(Tok::LBrace, "'{'");
        t.code = parse_outline_seq();
        expect(Tok::RBrace, "'}'");
        o.threads.push_back(std::move(t));
        continue;
      }
      if (eat_kw("rely")) {
        Tid tid = syms_->tid(expect_ident("thread id"));
        expect(Tok::LBrace, "'{'");
        std::vector<AssertPtr> rs;
        while (!at(Tok::RBrace)) {
          rs.push_back(parse_assertion());
          eat(Tok::Semi);
        }
        expect(Tok::RBrace, "'}'");
        o.rely_override[tid] = std::move(rs);
        continue;
      }
      // guarantee tid { { guard } stmt ; ... }
      next();
      Tid tid = syms_->tid(expect_ident("thread id"));
      expect(Tok::LBrace, "'{'");
      std::vector<GuaranteeOverride> gs;
      while (at(Tok::LBrace)) {
        next();
        GuaranteeOverride g;
        g.guard = parse_assertion();
        expect(Tok::RBrace, "'}'");
        CmdPtr c = parse_stmt();
        if (c->kind != CmdKind::Instr)
          throw ParseError(peek().pos, "guarantee subjects must be primitive");
        g.instr = c->instr;
        gs.push_back(std::move(g));
        eat(Tok::Semi);
      }
      expect(Tok::RBrace, "'}'");
      o.guarantee_override[tid] = std::move(gs);
    }
    if (o.threads.empty()) throw ParseError(peek().pos, "expected at least one thread outline");
    if (!eat_kw("post")) throw ParseError(peek().pos, "expected 'post'");
    expect(Tok::LBrace, "'{'");
    o.post = parse_assertion();
    expect(Tok::RBrace, "'}'");
    if (!at(Tok::End)) throw ParseError(peek().pos, "trailing input after outline");
    return o;
  }

  std::shared_ptr<SymbolTable> syms_;

 private:
  Lexer lexer_;
  NameClasses classes_;
  std::size_t pos_ = 0;
  bool no_greater_ = false;
};

}  // namespace

LitmusSpec parse_litmus(const std::string& text) {
  Parser p(text, std::make_shared<SymbolTable>());
  return p.parse_litmus_file();
}

ProofOutline parse_outline(const std::string& text) {
  Parser p(text, std::make_shared<SymbolTable>());
  return p.parse_outline_file();
}

AssertPtr parse_assertion_text(const std::string& text, SymbolTable& syms) {
  auto shared = std::shared_ptr<SymbolTable>(&syms, [](SymbolTable*) {});
  Parser p(text, shared);
  // pre-populate classes from the existing table
  return p.parse_assertion();
}

std::pair<Tid, InstrCmd> parse_subject_text(const std::string& text, SymbolTable& syms) {
  auto shared = std::shared_ptr<SymbolTable>(&syms, [](SymbolTable*) {});
  Parser p(text, shared);
  std::string tn = p.expect_ident("thread id");
  p.expect(Tok::Colon, "':'");
  CmdPtr c = p.parse_stmt();
  if (c->kind != CmdKind::Instr) throw ParseError({0, 0}, "subject must be primitive");
  return {syms.tid(tn), c->instr};
}

}  // namespace sraw
