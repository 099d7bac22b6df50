#include "elcr/syntax.hpp"

#include <cctype>
#include <optional>

namespace elcr {

ParseError::ParseError(const std::string& what, int line, int column, int end_column)
    : InputError(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      message_(what),
      line_(line),
      column_(column),
      end_column_(end_column) {}

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Equals, Bang, Amp, Bar, Arrow, DoubleArrow,
  Box, Diamond, Know, KnowDual, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::optional<Player> player;  // nullopt with Box/Diamond means [*] / <*>
  int line;
  int col;
  int end_col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {}, line, col, col});
        return out;
      }
      out.push_back(next(line, col));
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  std::optional<std::optional<Player>> player_at(std::size_t offset, bool star) const {
    if (pos_ + offset >= src_.size()) return std::nullopt;
    switch (src_[pos_ + offset]) {
      case 'x': return std::optional<std::optional<Player>>(std::in_place, Player::X);
      case 'y': return std::optional<std::optional<Player>>(std::in_place, Player::Y);
      case '*':
        if (star) return std::optional<std::optional<Player>>(std::in_place, std::nullopt);
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  Token make(Tok kind, std::size_t len, int line, int col, std::optional<Player> p = {}) {
    Token t{kind, std::string(src_.substr(pos_, len)), p, line, col, col + static_cast<int>(len)};
    advance(len);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, int line, int col) { throw ParseError(msg, line, col, col + 1); }

  Token next(int line, int col) {
    const char c = src_[pos_];
    if (c == '[') {
      auto p = player_at(1, true);
      if (p && pos_ + 2 < src_.size() && src_[pos_ + 2] == ']') return make(Tok::Box, 3, line, col, *p);
      fail("expected [x], [y] or [*]", line, col);
    }
    if (c == '<') {
      if (starts("<->")) return make(Tok::DoubleArrow, 3, line, col);
      if (starts("<K{") && pos_ + 5 < src_.size() && src_[pos_ + 4] == '}' && src_[pos_ + 5] == '>') {
        auto p = player_at(3, false);
        if (p) return make(Tok::KnowDual, 6, line, col, *p);
      }
      auto p = player_at(1, true);
      if (p && pos_ + 2 < src_.size() && src_[pos_ + 2] == '>') return make(Tok::Diamond, 3, line, col, *p);
      fail("unexpected '<'", line, col);
    }
    if (c == 'K' && starts("K{")) {
      auto p = player_at(2, false);
      if (p && pos_ + 3 < src_.size() && src_[pos_ + 3] == '}') return make(Tok::Know, 4, line, col, *p);
      fail("expected K{x} or K{y}", line, col);
    }
    if (starts("->")) return make(Tok::Arrow, 2, line, col);
    switch (c) {
      case '(': return make(Tok::LParen, 1, line, col);
      case ')': return make(Tok::RParen, 1, line, col);
      case ',': return make(Tok::Comma, 1, line, col);
      case '=': return make(Tok::Equals, 1, line, col);
      case '!': return make(Tok::Bang, 1, line, col);
      case '&': return make(Tok::Amp, 1, line, col);
      case '|': return make(Tok::Bar, 1, line, col);
      default: break;
    }
    if (ident_char(c)) {
      std::size_t len = 0;
      while (pos_ + len < src_.size() && ident_char(src_[pos_ + len])) ++len;
      return make(Tok::Ident, len, line, col);
    }
    fail(std::string("unexpected character '") + c + "'", line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Parsed {
  Formula f;
  bool knowledge;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Parsed p = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return p.f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  const Token& prev() const { return toks_[i_ == 0 ? 0 : i_ - 1]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.col, std::max(at.end_col, at.col + 1));
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what, peek());
    take();
  }

  Parsed expr() { return iff_level(); }

  Parsed iff_level() {
    Parsed a = imp_level();
    while (peek().kind == Tok::DoubleArrow) {
      take();
      Parsed b = imp_level();
      a = {iff(a.f, b.f), a.knowledge || b.knowledge};
    }
    return a;
  }

  Parsed imp_level() {
    Parsed a = or_level();
    if (peek().kind == Tok::Arrow) {
      take();
      Parsed b = imp_level();
      return {implies(a.f, b.f), a.knowledge || b.knowledge};
    }
    return a;
  }

  Parsed or_level() {
    Parsed a = and_level();
    while (peek().kind == Tok::Bar) {
      take();
      Parsed b = and_level();
      a = {disj(a.f, b.f), a.knowledge || b.knowledge};
    }
    return a;
  }

  Parsed and_level() {
    Parsed a = unary();
    while (peek().kind == Tok::Amp) {
      take();
      Parsed b = unary();
      a = {conj(a.f, b.f), a.knowledge || b.knowledge};
    }
    return a;
  }

  Term term(const Token& t) {
    if (t.kind != Tok::Ident) fail("expected a term", t);
    if (t.text == "x") return Term::var(Player::X);
    if (t.text == "y") return Term::var(Player::Y);
    if (t.text == "true" || t.text == "false") fail("expected a term", t);
    return Term::constant(t.text);
  }

  Parsed knowledge_body(const Token& op, Parsed body) {
    if (body.knowledge) {
      const Token& end = prev();
      const int end_col = end.line == op.line ? end.end_col : op.end_col;
      throw ParseError("knowledge operators cannot be nested", op.line, op.col, end_col);
    }
    return body;
  }

  Parsed unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang: {
        take();
        Parsed a = unary();
        return {neg(a.f), a.knowledge};
      }
      case Tok::Box: {
        const Token op = take();
        Parsed a = unary();
        return {op.player ? move(*op.player, a.f) : move_all(a.f), a.knowledge};
      }
      case Tok::Diamond: {
        const Token op = take();
        Parsed a = unary();
        return {op.player ? can_move(*op.player, a.f) : can_move_all(a.f), a.knowledge};
      }
      case Tok::Know: {
        const Token op = take();
        const Token& next = peek();
        const Tok after = peek(1).kind;
        if (next.kind == Tok::Ident && next.text != "true" && next.text != "false" && after != Tok::Equals &&
            after != Tok::LParen) {
          return {know_value(*op.player, term(take())), true};
        }
        Parsed body = knowledge_body(op, unary());
        return {know(*op.player, body.f), true};
      }
      case Tok::KnowDual: {
        const Token op = take();
        Parsed body = knowledge_body(op, unary());
        return {possible(*op.player, body.f), true};
      }
      default: return atom();
    }
  }

  Parsed atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Parsed inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t);
    if (t.text == "true") {
      take();
      return {top(), false};
    }
    if (t.text == "false") {
      take();
      return {bottom(), false};
    }
    if (peek(1).kind == Tok::LParen) {
      const Token name = take();
      if (name.text == "x" || name.text == "y") fail("variables cannot be predicates", name);
      take();
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term(take()));
        while (peek().kind == Tok::Comma) {
          take();
          args.push_back(term(take()));
        }
      }
      expect(Tok::RParen, "')' or ','");
      return {pred(name.text, std::move(args)), false};
    }
    const Term a = term(take());
    expect(Tok::Equals, "'='");
    const Term b = term(take());
    return {eq(a, b), false};
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void print_to(const Formula& f, std::string& out);

void print_terms(const std::vector<Term>& ts, std::string& out) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += ts[i].str();
  }
}

void print_binary(const Formula& a, const char* op, const Formula& b, std::string& out) {
  out += '(';
  print_to(a, out);
  out += op;
  print_to(b, out);
  out += ')';
}

void print_prefix(const std::string& op, const Formula& f, std::string& out) {
  out += op;
  out += ' ';
  print_to(f, out);
}

std::string player_op(const char* open, Player p, const char* close) {
  return std::string(open) + player_char(p) + close;
}

void print_negation(const Formula& f, std::string& out) {
  const Formula& g = f->lhs;
  switch (g.kind()) {
    case Kind::Top: out += "false"; return;
    case Kind::And:
      if (g->lhs.kind() == Kind::Not && g->rhs.kind() == Kind::Not) {
        print_binary(g->lhs->lhs, " | ", g->rhs->lhs, out);
        return;
      }
      if (g->rhs.kind() == Kind::Not) {
        print_binary(g->lhs, " -> ", g->rhs->lhs, out);
        return;
      }
      break;
    case Kind::Move:
      if (g->lhs.kind() == Kind::Not) return print_prefix(player_op("<", g->player, ">"), g->lhs->lhs, out);
      break;
    case Kind::Know:
      if (g->lhs.kind() == Kind::Not) return print_prefix(player_op("<K{", g->player, "}>"), g->lhs->lhs, out);
      break;
    case Kind::MoveAll:
      if (g->lhs.kind() == Kind::Not) return print_prefix("<*>", g->lhs->lhs, out);
      break;
    default: break;
  }
  out += '!';
  print_to(g, out);
}

void print_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Top: out += "true"; return;
    case Kind::Pred:
      out += f->pred.str();
      out += '(';
      print_terms(f->terms, out);
      out += ')';
      return;
    case Kind::Eq:
      out += '(';
      out += f->terms[0].str();
      out += " = ";
      out += f->terms[1].str();
      out += ')';
      return;
    case Kind::Not: print_negation(f, out); return;
    case Kind::And: print_binary(f->lhs, " & ", f->rhs, out); return;
    case Kind::KnowValue:
      out += player_op("K{", f->player, "} ");
      out += f->terms[0].str();
      return;
    case Kind::Know: print_prefix(player_op("K{", f->player, "}"), f->lhs, out); return;
    case Kind::Move: print_prefix(player_op("[", f->player, "]"), f->lhs, out); return;
    case Kind::MoveAll: print_prefix("[*]", f->lhs, out); return;
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::vector<Formula> parse_lines(std::string_view text) {
  std::vector<Formula> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse(line));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), line_no, e.column(), e.end_column());
      }
    }
    start = end + 1;
  }
  return out;
}

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

}  // namespace elcr
