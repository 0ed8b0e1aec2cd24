#include "cherednik/expr.hpp"

#include <cctype>

namespace cherednik {

namespace {

struct Token {
  enum class Kind { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  Lexer(const std::string& s, int line0, int col0) : s_(s), line_(line0), col_(col0) {}

  Token next() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) advance();
    Token t;
    t.line = line_;
    t.col = col_;
    if (i_ >= s_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = s_[i_];
    if (std::isdigit((unsigned char)c)) {
      t.kind = Token::Kind::Int;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
        t.text += s_[i_];
        advance();
      }
      return t;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (i_ < s_.size() &&
             (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) {
        t.text += s_[i_];
        advance();
      }
      return t;
    }
    advance();
    switch (c) {
      case '+': t.kind = Token::Kind::Plus; return t;
      case '-': t.kind = Token::Kind::Minus; return t;
      case '*': t.kind = Token::Kind::Star; return t;
      case '/': t.kind = Token::Kind::Slash; return t;
      case '^': t.kind = Token::Kind::Caret; return t;
      case '(': t.kind = Token::Kind::LParen; return t;
      case ')': t.kind = Token::Kind::RParen; return t;
      default:
        throw ConfigError(std::string("unexpected character '") + c + "' in expression", t.line,
                          t.col);
    }
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  const std::string& s_;
  size_t i_ = 0;
  int line_, col_;
};

class Parser {
 public:
  Parser(const std::string& s, int line0, int col0) : lex_(s, line0, col0) { bump(); }

  ExprPtr parse() {
    ExprPtr e = sum();
    if (cur_.kind != Token::Kind::End)
      throw ConfigError("trailing input '" + cur_.text + "' after expression", cur_.line,
                        cur_.col);
    return e;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  ExprPtr node(Expr::Kind k, const Token& t) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = t.line;
    e->col = t.col;
    return e;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
      Token op = cur_;
      bump();
      ExprPtr e = node(op.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op);
      e->lhs = lhs;
      e->rhs = product();
      lhs = e;
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = factor();
    while (cur_.kind == Token::Kind::Star || cur_.kind == Token::Kind::Slash) {
      Token op = cur_;
      bump();
      ExprPtr e = node(op.kind == Token::Kind::Star ? Expr::Kind::Mul : Expr::Kind::Div, op);
      e->lhs = lhs;
      e->rhs = factor();
      lhs = e;
    }
    return lhs;
  }

  ExprPtr factor() {
    if (cur_.kind == Token::Kind::Minus) {
      Token op = cur_;
      bump();
      ExprPtr e = node(Expr::Kind::Neg, op);
      e->lhs = factor();
      return e;
    }
    ExprPtr base = primary();
    if (cur_.kind == Token::Kind::Caret) {
      Token op = cur_;
      bump();
      bool neg = false;
      if (cur_.kind == Token::Kind::Minus) {
        neg = true;
        bump();
      }
      if (cur_.kind != Token::Kind::Int)
        throw ConfigError("exponent must be an integer literal", cur_.line, cur_.col);
      long exp = std::stol(cur_.text);
      bump();
      ExprPtr e = node(Expr::Kind::Pow, op);
      e->lhs = base;
      e->exponent = neg ? -exp : exp;
      return e;
    }
    return base;
  }

  ExprPtr primary() {
    if (cur_.kind == Token::Kind::Int) {
      ExprPtr e = node(Expr::Kind::Num, cur_);
      e->num = rat_parse(cur_.text);
      bump();
      return e;
    }
    if (cur_.kind == Token::Kind::Ident) {
      ExprPtr e = node(Expr::Kind::Sym, cur_);
      e->sym = cur_.text;
      bump();
      return e;
    }
    if (cur_.kind == Token::Kind::LParen) {
      bump();
      ExprPtr e = sum();
      if (cur_.kind != Token::Kind::RParen)
        throw ConfigError("expected ')'", cur_.line, cur_.col);
      bump();
      return e;
    }
    if (cur_.kind == Token::Kind::End)
      throw ConfigError("unexpected end of expression", cur_.line, cur_.col);
    throw ConfigError("unexpected token '" + cur_.text + "'", cur_.line, cur_.col);
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

ExprPtr parse_expr(const std::string& text, int line0, int col0) {
  return Parser(text, line0, col0).parse();
}

}  // namespace cherednik
