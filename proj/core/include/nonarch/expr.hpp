#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nonarch/series.hpp"

namespace nonarch {

// Expression grammar (whitespace is insignificant):
//
//   expr     = term { ("+" | "-") term } ;
//   term     = unary { ("*" | "/") unary } ;
//   unary    = [ "+" | "-" ] unary | power ;
//   power    = atom [ "^" exponent ] ;
//   exponent = [ "-" ] integer | "(" [ "+" | "-" ] integer [ "/" integer ] ")" ;
//   atom     = number | "i" | "T" | name | "(" expr ")" ;
//   number   = digit { digit } [ "." digit { digit } ] ;
//   name     = letter { letter | digit | "_" } ;
//
// Only T takes a non-integer exponent. A divisor must be a single monomial.

struct ExprNode {
  enum class Kind { Number, Imag, T, Var, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  double number = 0.0;
  std::string name;
  Rational exponent;  // Pow
  std::size_t pos = 0;
  std::shared_ptr<const ExprNode> lhs, rhs;
};
using Expr = std::shared_ptr<const ExprNode>;

Expr parse_expression(std::string_view text);

// Variables in canonical order: Y1, Y2, ... by index, then other names by first use.
std::vector<std::string> expression_variables(const Expr& e);

// Each name in vars becomes one series variable; names in bindings are
// substituted by scalar values. Unknown names raise UnknownName.
LaurentSeries evaluate_expression(const Expr& e, const std::vector<std::string>& vars, const Rational& cutoff,
                                  const std::map<std::string, NovikovScalar>& bindings = {});

// Convenience for variable-free text.
NovikovScalar evaluate_scalar_expression(std::string_view text, const Rational& cutoff);

// Parses "Y1=T^(1/2), Y2=1" into scalar bindings.
std::map<std::string, NovikovScalar> parse_bindings(std::string_view text, const Rational& cutoff);

}  // namespace nonarch
