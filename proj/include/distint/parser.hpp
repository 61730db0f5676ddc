// Polynomial expressions over component variables x{j}_{i}.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER ('/' NUMBER)? | 'x' J '_' I | 'dot' '(' 'x' A ',' 'x' B ')'
//            | 'normsq' '(' 'x' J ')' | '(' expr ')'
//
// Indices are 1-based. `^` binds tighter than unary minus: -x1_1^2 = -(x1_1^2).
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "distint/polyalg.hpp"

namespace distint {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Expr {
  enum class Kind { number, variable, dot, normsq, add, sub, mul, neg, pow };

  Kind kind = Kind::number;
  Rational value;            // number
  int var = 0, comp = 0;     // variable: x{var}_{comp}; dot: x{var}, x{comp}; normsq: x{var}
  unsigned exponent = 0;     // pow
  std::vector<std::unique_ptr<Expr>> children;
  int line = 1, column = 1;  // source position of the node
};

/// Syntax tree; throws ParseError.
std::unique_ptr<Expr> parse_expr(std::string_view source);

/// Lowers an expression to canonical form; index errors become ParseError at the node.
VectorPoly lower(const Expr& e, int m, int num_vars);

VectorPoly parse_poly(std::string_view source, int m, int num_vars);

/// Splits "E1;E2;..." and parses each part.
std::vector<VectorPoly> parse_poly_list(std::string_view source, int m, int num_vars);

}  // namespace distint
