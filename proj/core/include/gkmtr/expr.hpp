#pragma once

#include "gkmtr/poly.hpp"

#include <memory>
#include <set>

namespace gkmtr {

// Arithmetic expressions over exact rationals, the variable z and named
// parameters: + - * / ^ and parentheses.  "1/12" parses as one rational.
struct ExprNode {
  enum Kind { Num, Var, Add, Sub, Mul, Div, Pow, Neg } kind;
  Rat value;        // Num
  std::string name; // Var (z or a parameter)
  std::shared_ptr<ExprNode> lhs, rhs;
  int exponent = 0; // Pow
};
using Expr = std::shared_ptr<ExprNode>;

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

Expr parse_expr(const std::string& text);
std::string print_expr(const Expr& e);
bool expr_equal(const Expr& a, const Expr& b);
std::set<std::string> expr_params(const Expr& e);  // identifiers other than z

// Polynomial mode: division only by constants; parameters become Free ring
// symbols (the ring may carry extra symbols declared by the caller).
Poly expr_to_poly(const Expr& e, const Ring* ring);

// Deformed mode: the expression must be U(z) / prod_i (1 - eps_i z) with
// every eps_i a declared Truncated ring symbol; returns U and the pole list.
struct DeformedV2 {
  Poly U;
  std::vector<int> eps_syms;
};
DeformedV2 expr_to_deformed_v2(const Expr& e, const Ring* ring);

}  // namespace gkmtr
