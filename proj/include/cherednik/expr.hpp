#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cherednik/rational.hpp"

namespace cherednik {

// Small arithmetic expression language shared by every textual input surface:
// +, -, *, /, ^ (integer exponent), parentheses, rational literals, and
// identifiers. What an identifier means (parameter symbol, coordinate,
// algebra generator, root of unity) is decided by the evaluation context.
struct Expr {
  enum class Kind { Num, Sym, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  Rat num;            // Kind::Num
  std::string sym;    // Kind::Sym
  long exponent = 0;  // Kind::Pow
  std::shared_ptr<Expr> lhs, rhs;
  int line = 1, col = 1;
};

using ExprPtr = std::shared_ptr<Expr>;

// Parses a complete expression; positions are 1-based and offset by
// (line0, col0) so errors inside config values point into the config file.
ExprPtr parse_expr(const std::string& text, int line0 = 1, int col0 = 1);

// Evaluation over any value type. The context supplies:
//   Value number(const Rat&)            literal
//   Value symbol(const std::string&, int line, int col)
//   Value add/sub/mul/div(Value, Value)
//   Value neg(Value)
//   Value pow(Value, long)
template <class Ctx>
typename Ctx::Value eval_expr(const ExprPtr& e, Ctx& ctx) {
  switch (e->kind) {
    case Expr::Kind::Num: return ctx.number(e->num);
    case Expr::Kind::Sym: return ctx.symbol(e->sym, e->line, e->col);
    case Expr::Kind::Add: return ctx.add(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case Expr::Kind::Sub: return ctx.sub(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case Expr::Kind::Mul: return ctx.mul(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case Expr::Kind::Div: return ctx.div(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case Expr::Kind::Neg: return ctx.neg(eval_expr(e->lhs, ctx));
    case Expr::Kind::Pow: return ctx.pow(eval_expr(e->lhs, ctx), e->exponent);
  }
  fail(ErrorCode::InternalError, "unreachable expression kind");
}

}  // namespace cherednik
