#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "varmap/parse.hpp"

namespace varmap::lang {

namespace {

enum class Tok {
  End, Ident, IntLit, FloatLit, Str,
  KwInt, KwFloat, KwVoid, KwIf, KwElse, KwFor, KwWhile, KwReturn, KwScanf, KwPrintf,
  Plus, Minus, Star, Slash, Percent,
  PlusPlus, MinusMinus,
  Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Not,
  Assign, PlusAssign, MinusAssign, StarAssign, SlashAssign, PercentAssign,
  LParen, RParen, LBrace, RBrace, Comma, Semi, Amp,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;       // Ident; Str holds the unescaped payload
  long long int_value = 0;
  double float_value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw parse_error(line_, col_, msg); }

  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (peek() != '\0' && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (peek() == '\0') fail("unterminated comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token make(Tok k) {
    Token t;
    t.kind = k;
    t.line = tok_line_;
    t.col = tok_col_;
    return t;
  }

  Token next() {
    skip_trivia();
    tok_line_ = line_;
    tok_col_ = col_;
    if (pos_ >= src_.size()) return make(Tok::End);
    char c = peek();

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      return number();
    if (c == '"') return string_lit();

    advance();
    switch (c) {
      case '+':
        if (peek() == '+') { advance(); return make(Tok::PlusPlus); }
        if (peek() == '=') { advance(); return make(Tok::PlusAssign); }
        return make(Tok::Plus);
      case '-':
        if (peek() == '-') { advance(); return make(Tok::MinusMinus); }
        if (peek() == '=') { advance(); return make(Tok::MinusAssign); }
        return make(Tok::Minus);
      case '*':
        if (peek() == '=') { advance(); return make(Tok::StarAssign); }
        return make(Tok::Star);
      case '/':
        if (peek() == '=') { advance(); return make(Tok::SlashAssign); }
        return make(Tok::Slash);
      case '%':
        if (peek() == '=') { advance(); return make(Tok::PercentAssign); }
        return make(Tok::Percent);
      case '<':
        if (peek() == '=') { advance(); return make(Tok::Le); }
        return make(Tok::Lt);
      case '>':
        if (peek() == '=') { advance(); return make(Tok::Ge); }
        return make(Tok::Gt);
      case '=':
        if (peek() == '=') { advance(); return make(Tok::EqEq); }
        return make(Tok::Assign);
      case '!':
        if (peek() == '=') { advance(); return make(Tok::Ne); }
        return make(Tok::Not);
      case '&':
        if (peek() == '&') { advance(); return make(Tok::AndAnd); }
        return make(Tok::Amp);
      case '|':
        if (peek() == '|') { advance(); return make(Tok::OrOr); }
        fail("stray '|'");
      case '(': return make(Tok::LParen);
      case ')': return make(Tok::RParen);
      case '{': return make(Tok::LBrace);
      case '}': return make(Tok::RBrace);
      case ',': return make(Tok::Comma);
      case ';': return make(Tok::Semi);
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  Token ident() {
    std::string s;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') s += advance();
    Token t = make(Tok::Ident);
    if (s == "int") t.kind = Tok::KwInt;
    else if (s == "float" || s == "double") t.kind = Tok::KwFloat;
    else if (s == "void") t.kind = Tok::KwVoid;
    else if (s == "if") t.kind = Tok::KwIf;
    else if (s == "else") t.kind = Tok::KwElse;
    else if (s == "for") t.kind = Tok::KwFor;
    else if (s == "while") t.kind = Tok::KwWhile;
    else if (s == "return") t.kind = Tok::KwReturn;
    else if (s == "scanf") t.kind = Tok::KwScanf;
    else if (s == "printf") t.kind = Tok::KwPrintf;
    else t.text = std::move(s);
    return t;
  }

  Token number() {
    std::string s;
    bool is_float = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
    if (peek() == '.') {
      is_float = true;
      s += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      is_float = true;
      s += advance();
      if (peek() == '+' || peek() == '-') s += advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
    }
    Token t = make(is_float ? Tok::FloatLit : Tok::IntLit);
    if (is_float) {
      t.float_value = std::strtod(s.c_str(), nullptr);
    } else {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t.int_value);
      if (ec != std::errc{}) fail("integer literal out of range");
    }
    return t;
  }

  Token string_lit() {
    advance();  // opening quote
    std::string s;
    for (;;) {
      char c = peek();
      if (c == '\0' || c == '\n') fail("unterminated string literal");
      advance();
      if (c == '"') break;
      if (c == '\\') {
        char e = peek();
        advance();
        switch (e) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case 'r': s += '\r'; break;
          case '0': s += '\0'; break;
          case '\\': s += '\\'; break;
          case '"': s += '"'; break;
          case '%': s += '%'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      } else {
        s += c;
      }
    }
    Token t = make(Tok::Str);
    t.text = std::move(s);
    return t;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int tok_line_ = 1;
  int tok_col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (peek().kind != Tok::End) p.functions.push_back(function());
    return p;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(peek().line, peek().col, msg);
  }

  bool accept(Tok k) {
    if (peek().kind == k) {
      take();
      return true;
    }
    return false;
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return take();
  }

  bool is_type(Tok k) const { return k == Tok::KwInt || k == Tok::KwFloat || k == Tok::KwVoid; }

  Type type_spec() {
    switch (take().kind) {
      case Tok::KwInt: return Type::Int;
      case Tok::KwFloat: return Type::Float;
      case Tok::KwVoid: return Type::Void;
      default: fail("expected type");
    }
  }

  Function function() {
    if (!is_type(peek().kind)) fail("expected function definition");
    Function f;
    f.return_type = type_spec();
    f.name = expect(Tok::Ident, "function name").text;
    expect(Tok::LParen, "'('");
    if (!accept(Tok::RParen)) {
      do {
        if (peek().kind == Tok::KwVoid && peek(1).kind == Tok::RParen) {
          take();  // f(void)
          break;
        }
        Param param;
        param.type = type_spec();
        if (param.type == Type::Void) fail("void parameter");
        param.name = expect(Tok::Ident, "parameter name").text;
        f.params.push_back(std::move(param));
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::LBrace, "'{'");
    f.body = stmt_list_until_rbrace();
    return f;
  }

  std::vector<Stmt> stmt_list_until_rbrace() {
    std::vector<Stmt> out;
    while (!accept(Tok::RBrace)) {
      if (peek().kind == Tok::End) fail("unexpected end of input, expected '}'");
      append_stmt(out);
    }
    return out;
  }

  // Parses one statement; bare ';' adds nothing.
  void append_stmt(std::vector<Stmt>& out) {
    if (accept(Tok::Semi)) return;
    out.push_back(statement());
  }

  std::vector<Stmt> braced_or_single() {
    std::vector<Stmt> out;
    if (accept(Tok::LBrace)) return stmt_list_until_rbrace();
    append_stmt(out);
    return out;
  }

  Stmt statement() {
    switch (peek().kind) {
      case Tok::KwInt:
      case Tok::KwFloat:
        return declaration();
      case Tok::KwIf: return if_statement();
      case Tok::KwWhile: return while_statement();
      case Tok::KwFor: return for_statement();
      case Tok::KwReturn: return return_statement();
      case Tok::KwScanf: return scanf_statement();
      case Tok::KwPrintf: return printf_statement();
      case Tok::LBrace: {
        take();
        return Stmt::block(stmt_list_until_rbrace());
      }
      default:
        return simple_statement(true);
    }
  }

  Stmt declaration() {
    Type t = type_spec();
    std::vector<Declarator> ds;
    do {
      Declarator d;
      d.name = expect(Tok::Ident, "variable name").text;
      if (accept(Tok::Assign)) d.init.push_back(expression());
      ds.push_back(std::move(d));
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
    return Stmt::decl(t, std::move(ds));
  }

  Stmt if_statement() {
    take();
    expect(Tok::LParen, "'('");
    Expr cond = expression();
    expect(Tok::RParen, "')'");
    std::vector<Stmt> then_body = braced_or_single();
    if (accept(Tok::KwElse))
      return Stmt::if_else(std::move(cond), std::move(then_body), braced_or_single());
    return Stmt::if_stmt(std::move(cond), std::move(then_body));
  }

  Stmt while_statement() {
    take();
    expect(Tok::LParen, "'('");
    Expr cond = expression();
    expect(Tok::RParen, "')'");
    return Stmt::while_stmt(std::move(cond), braced_or_single());
  }

  Stmt for_statement() {
    take();
    expect(Tok::LParen, "'('");
    Stmt s;
    s.kind = Stmt::Kind::For;
    if (!accept(Tok::Semi)) {
      s.init.push_back(simple_statement(false));
      expect(Tok::Semi, "';'");
    }
    if (!accept(Tok::Semi)) {
      s.exprs.push_back(expression());
      expect(Tok::Semi, "';'");
    }
    if (peek().kind != Tok::RParen) s.step.push_back(simple_statement(false));
    expect(Tok::RParen, "')'");
    s.body = braced_or_single();
    return s;
  }

  Stmt return_statement() {
    take();
    if (accept(Tok::Semi)) return Stmt::return_stmt();
    Expr e = expression();
    expect(Tok::Semi, "';'");
    return Stmt::return_value(std::move(e));
  }

  Stmt scanf_statement() {
    take();
    expect(Tok::LParen, "'('");
    Stmt s;
    s.kind = Stmt::Kind::Scanf;
    s.format = expect(Tok::Str, "format string").text;
    while (accept(Tok::Comma)) {
      accept(Tok::Amp);  // '&' accepted and discarded
      s.exprs.push_back(Expr::var(expect(Tok::Ident, "variable name").text));
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    return s;
  }

  Stmt printf_statement() {
    take();
    expect(Tok::LParen, "'('");
    Stmt s;
    s.kind = Stmt::Kind::Printf;
    s.format = expect(Tok::Str, "format string").text;
    while (accept(Tok::Comma)) s.exprs.push_back(expression());
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    return s;
  }

  // Assignment (plain or compound, compound desugars to `x = x op e`),
  // or an expression statement. Used for plain statements and for-clauses.
  Stmt simple_statement(bool want_semi) {
    if (peek().kind == Tok::Ident) {
      Tok nxt = peek(1).kind;
      if (nxt == Tok::Assign || nxt == Tok::PlusAssign || nxt == Tok::MinusAssign ||
          nxt == Tok::StarAssign || nxt == Tok::SlashAssign || nxt == Tok::PercentAssign) {
        std::string name = take().text;
        Tok op = take().kind;
        Expr value = expression();
        if (op != Tok::Assign) {
          BinOp bop = op == Tok::PlusAssign    ? BinOp::Add
                      : op == Tok::MinusAssign ? BinOp::Sub
                      : op == Tok::StarAssign  ? BinOp::Mul
                      : op == Tok::SlashAssign ? BinOp::Div
                                               : BinOp::Mod;
          value = Expr::binary(bop, Expr::var(name), std::move(value));
        }
        if (want_semi) expect(Tok::Semi, "';'");
        return Stmt::assign(std::move(name), std::move(value));
      }
    }
    Expr e = expression();
    if (want_semi) expect(Tok::Semi, "';'");
    return Stmt::expr_stmt(std::move(e));
  }

  Expr expression() { return binary_expr(0); }

  static int precedence(Tok k) {
    switch (k) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::EqEq:
      case Tok::Ne: return 3;
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge: return 4;
      case Tok::Plus:
      case Tok::Minus: return 5;
      case Tok::Star:
      case Tok::Slash:
      case Tok::Percent: return 6;
      default: return -1;
    }
  }

  static BinOp to_bin_op(Tok k) {
    switch (k) {
      case Tok::OrOr: return BinOp::Or;
      case Tok::AndAnd: return BinOp::And;
      case Tok::EqEq: return BinOp::Eq;
      case Tok::Ne: return BinOp::Ne;
      case Tok::Lt: return BinOp::Lt;
      case Tok::Le: return BinOp::Le;
      case Tok::Gt: return BinOp::Gt;
      case Tok::Ge: return BinOp::Ge;
      case Tok::Plus: return BinOp::Add;
      case Tok::Minus: return BinOp::Sub;
      case Tok::Star: return BinOp::Mul;
      case Tok::Slash: return BinOp::Div;
      default: return BinOp::Mod;
    }
  }

  Expr binary_expr(int min_prec) {
    Expr lhs = unary_expr();
    for (;;) {
      int prec = precedence(peek().kind);
      if (prec < 0 || prec < min_prec) return lhs;
      BinOp op = to_bin_op(take().kind);
      Expr rhs = binary_expr(prec + 1);  // left-associative
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
  }

  Expr unary_expr() {
    switch (peek().kind) {
      case Tok::Minus:
        take();
        return Expr::unary(UnOp::Neg, unary_expr());
      case Tok::Not:
        take();
        return Expr::unary(UnOp::Not, unary_expr());
      case Tok::PlusPlus: {
        take();
        Expr v = Expr::var(expect(Tok::Ident, "variable after '++'").text);
        return Expr::unary(UnOp::PreInc, std::move(v));
      }
      case Tok::MinusMinus: {
        take();
        Expr v = Expr::var(expect(Tok::Ident, "variable after '--'").text);
        return Expr::unary(UnOp::PreDec, std::move(v));
      }
      default:
        return postfix_expr();
    }
  }

  Expr postfix_expr() {
    Expr e = primary_expr();
    for (;;) {
      if (peek().kind == Tok::PlusPlus && e.kind == Expr::Kind::Var) {
        take();
        e = Expr::unary(UnOp::PostInc, std::move(e));
      } else if (peek().kind == Tok::MinusMinus && e.kind == Expr::Kind::Var) {
        take();
        e = Expr::unary(UnOp::PostDec, std::move(e));
      } else {
        return e;
      }
    }
  }

  Expr primary_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::IntLit: {
        long long v = take().int_value;
        return Expr::int_lit(v);
      }
      case Tok::FloatLit: {
        double v = take().float_value;
        return Expr::float_lit(v);
      }
      case Tok::LParen: {
        take();
        Expr e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        std::string name = take().text;
        if (accept(Tok::LParen)) {
          std::vector<Expr> args;
          if (!accept(Tok::RParen)) {
            do args.push_back(expression());
            while (accept(Tok::Comma));
            expect(Tok::RParen, "')'");
          }
          return Expr::call(std::move(name), std::move(args));
        }
        return Expr::var(std::move(name));
      }
      default:
        fail("expected expression");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Program parse(const std::string& source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  Program p = parser.program();
  analyze(p);
  return p;
}

}  // namespace varmap::lang
