#include "doctest.h"
#include "nonarch/errors.hpp"
#include "nonarch/expr.hpp"

using namespace nonarch;

TEST_CASE("scalar expressions") {
  CHECK(evaluate_scalar_expression("T^(1/2)*T^(1/3)", 4).str() == "T^(5/6)");
  CHECK(evaluate_scalar_expression("(1+T)^-1", 3).str() == "1 - T + T^2");
  CHECK(evaluate_scalar_expression("3/2 * T^(-1)", 4).str() == "1.5*T^(-1)");
  CHECK(evaluate_scalar_expression(" 2 * i ", 4).str() == "2i");
  CHECK(evaluate_scalar_expression("-(1 - T)^2", 4).str() == "-1 + 2*T - T^2");
}

TEST_CASE("series expressions and substitution") {
  auto e = parse_expression("Y1 + T*Y1^-1");
  auto vars = expression_variables(e);
  REQUIRE(vars.size() == 1);
  auto f = evaluate_expression(e, vars, 4);
  CHECK(f.str() == "Y1 + T*Y1^-1");
  auto b = parse_bindings("Y1=T^(1/2)", 4);
  auto v = evaluate_expression(e, {}, 4, b);
  CHECK(v.coeff({}).str() == "2*T^(1/2)");
  auto g = parse_expression("x0^-1 + y/x0 + T*x0^2/y");
  auto gv = expression_variables(g);
  CHECK(gv == std::vector<std::string>{"x0", "y"});
  CHECK(expression_variables(parse_expression("Y2*Y10 + Y1")) == std::vector<std::string>{"Y1", "Y2", "Y10"});
}

TEST_CASE("parse errors carry positions") {
  auto pos = [](const char* s) {
    try {
      parse_expression(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(pos("1 + ") == 4);
  CHECK(pos("(1 + T") == 6);
  CHECK(pos("Y1^(1/2)") == 2);
  CHECK(pos("2 $ 3") == 2);
  CHECK(pos("T^(1/0)") == 5);
  CHECK_THROWS_AS(evaluate_scalar_expression("1/(1+T)", 3), ParseError);
  CHECK_THROWS_AS(evaluate_scalar_expression("Z + 1", 3), Error);
}
