#include "nonarch/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(p_, msg); }

  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char c) {
    skip();
    return p_ < s_.size() && s_[p_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++p_;
    return true;
  }

  static Expr node(ExprNode::Kind k, std::size_t pos, Expr l = nullptr, Expr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->pos = pos;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      std::size_t at = (skip(), p_);
      if (eat('+')) {
        e = node(ExprNode::Kind::Add, at, e, term());
      } else if (eat('-')) {
        e = node(ExprNode::Kind::Sub, at, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      std::size_t at = (skip(), p_);
      if (eat('*')) {
        e = node(ExprNode::Kind::Mul, at, e, unary());
      } else if (eat('/')) {
        e = node(ExprNode::Kind::Div, at, e, unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    std::size_t at = (skip(), p_);
    if (eat('-')) return node(ExprNode::Kind::Neg, at, unary());
    if (eat('+')) return unary();
    return power();
  }

  std::int64_t integer() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) fail("expected an integer");
    if (p_ - start > 17) fail("integer too large");
    return std::stoll(std::string(s_.substr(start, p_ - start)));
  }

  Rational exponent() {
    if (eat('(')) {
      int sign = 1;
      if (eat('-')) {
        sign = -1;
      } else {
        eat('+');
      }
      std::int64_t n = integer();
      std::int64_t d = 1;
      if (eat('/')) {
        std::size_t at = p_;
        d = integer();
        if (d == 0) throw ParseError(at, "zero denominator in exponent");
      }
      if (!eat(')')) fail("expected ')'");
      return Rational(sign * n, d);
    }
    int sign = eat('-') ? -1 : 1;
    return Rational(sign * integer());
  }

  Expr power() {
    Expr base = atom();
    std::size_t at = (skip(), p_);
    if (!eat('^')) return base;
    Rational e = exponent();
    if (!e.is_integer() && base->kind != ExprNode::Kind::T)
      throw ParseError(at, "only T takes a fractional exponent");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Pow;
    n->pos = at;
    n->lhs = base;
    n->exponent = e;
    return n;
  }

  Expr atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end of input");
    std::size_t at = p_;
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (p_ < s_.size() && s_[p_] == '.') {
        ++p_;
        std::size_t frac = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (frac == p_) fail("expected digits after '.'");
      }
      if (start == p_ || (p_ - start == 1 && s_[start] == '.')) fail("malformed number");
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::Number;
      n->pos = at;
      n->number = std::strtod(std::string(s_.substr(start, p_ - start)).c_str(), nullptr);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
      std::string name(s_.substr(start, p_ - start));
      auto n = std::make_shared<ExprNode>();
      n->pos = at;
      if (name == "i") {
        n->kind = ExprNode::Kind::Imag;
      } else if (name == "T") {
        n->kind = ExprNode::Kind::T;
      } else {
        n->kind = ExprNode::Kind::Var;
        n->name = name;
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

void collect(const Expr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Var && std::find(out.begin(), out.end(), e->name) == out.end())
    out.push_back(e->name);
  collect(e->lhs, out);
  collect(e->rhs, out);
}

int y_index(const std::string& n) {
  if (n.size() < 2 || n[0] != 'Y') return -1;
  for (std::size_t i = 1; i < n.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(n[i]))) return -1;
  if (n[1] == '0') return -1;
  return std::stoi(n.substr(1));
}

struct Evaluator {
  const std::vector<std::string>& vars;
  Rational cutoff;
  const std::map<std::string, NovikovScalar>& bindings;
  int rank() const { return static_cast<int>(vars.size()); }

  LaurentSeries constant(const NovikovScalar& c) const {
    return LaurentSeries::constant(rank(), c).with_cutoff(cutoff);
  }

  LaurentSeries eval(const Expr& e) const {
    using K = ExprNode::Kind;
    switch (e->kind) {
      case K::Number:
        return constant(NovikovScalar(e->number));
      case K::Imag:
        return constant(NovikovScalar(Complex(0.0, 1.0)));
      case K::T:
        return constant(NovikovScalar::monomial(1.0, Rational(1)));
      case K::Var: {
        auto b = bindings.find(e->name);
        if (b != bindings.end()) return constant(b->second);
        auto it = std::find(vars.begin(), vars.end(), e->name);
        if (it == vars.end()) throw Error(ErrorCode::UnknownName, "unbound name '" + e->name + "'");
        return LaurentSeries::variable(rank(), static_cast<int>(it - vars.begin())).with_cutoff(cutoff);
      }
      case K::Add:
        return eval(e->lhs) + eval(e->rhs);
      case K::Sub:
        return eval(e->lhs) - eval(e->rhs);
      case K::Mul:
        return eval(e->lhs) * eval(e->rhs);
      case K::Neg:
        return -eval(e->lhs);
      case K::Div: {
        LaurentSeries d = eval(e->rhs);
        if (d.size() != 1 || d.terms().begin()->second.terms().size() != 1)
          throw ParseError(e->pos, "divisor must be a single monomial");
        return eval(e->lhs) * series_pow(d, -1);
      }
      case K::Pow: {
        if (e->lhs->kind == K::T) {
          return constant(NovikovScalar::monomial(1.0, e->exponent));
        }
        return series_pow(eval(e->lhs), static_cast<int>(e->exponent.num()));
      }
    }
    throw Error(ErrorCode::InvalidArgument, "bad expression node");
  }
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::vector<std::string> expression_variables(const Expr& e) {
  std::vector<std::string> names;
  collect(e, names);
  std::vector<std::string> ys, rest;
  for (const auto& n : names) (y_index(n) > 0 ? ys : rest).push_back(n);
  std::sort(ys.begin(), ys.end(), [](const auto& a, const auto& b) { return y_index(a) < y_index(b); });
  ys.insert(ys.end(), rest.begin(), rest.end());
  return ys;
}

LaurentSeries evaluate_expression(const Expr& e, const std::vector<std::string>& vars, const Rational& cutoff,
                                  const std::map<std::string, NovikovScalar>& bindings) {
  return Evaluator{vars, cutoff, bindings}.eval(e);
}

NovikovScalar evaluate_scalar_expression(std::string_view text, const Rational& cutoff) {
  Expr e = parse_expression(text);
  auto names = expression_variables(e);
  if (!names.empty()) throw Error(ErrorCode::UnknownName, "unbound name '" + names.front() + "'");
  LaurentSeries f = evaluate_expression(e, {}, cutoff);
  return f.coeff({});
}

std::map<std::string, NovikovScalar> parse_bindings(std::string_view text, const Rational& cutoff) {
  std::map<std::string, NovikovScalar> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(start, "expected name=value");
    std::string name(item.substr(0, eq));
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) throw ParseError(start, "empty name");
    try {
      out[name] = evaluate_scalar_expression(item.substr(eq + 1), cutoff);
    } catch (const ParseError& pe) {
      throw ParseError(start + eq + 1 + pe.position(), "in binding of " + name);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace nonarch
