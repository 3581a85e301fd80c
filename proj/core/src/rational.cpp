#include "nonarch/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits64(n) || !fits64(d)) throw Error(ErrorCode::Overflow, "rational out of 64-bit range");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = n == 0 ? 1 : static_cast<std::int64_t>(d);
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const { return -(-*this).floor(); }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  auto slash = s.find('/');
  auto to_int = [](std::string_view v) {
    std::int64_t x = 0;
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
      throw Error(ErrorCode::InvalidArgument, "bad rational literal '" + std::string(v) + "'");
    return x;
  };
  if (slash == std::string_view::npos) return Rational(to_int(s));
  return Rational(to_int(trim(s.substr(0, slash))), to_int(trim(s.substr(slash + 1))));
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw Error(ErrorCode::Overflow, "negation");
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  } else {
    *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error(ErrorCode::InvalidArgument, "rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& r, int e) {
  if (e < 0) return pow(Rational(1) / r, -e);
  Rational out(1), b = r;
  while (e > 0) {
    if (e & 1) out *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return out;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

const Rational& RatInf::value() const {
  if (inf_) throw Error(ErrorCode::InvalidArgument, "value() of infinity");
  return v_;
}

double RatInf::to_double() const {
  return inf_ ? std::numeric_limits<double>::infinity() : v_.to_double();
}

RatInf operator+(const RatInf& a, const RatInf& b) {
  if (a.inf_ || b.inf_) return RatInf::infinity();
  return RatInf(a.v_ + b.v_);
}

RatInf operator-(const RatInf& a, const Rational& b) {
  if (a.inf_) return a;
  return RatInf(a.v_ - b);
}

std::strong_ordering operator<=>(const RatInf& a, const RatInf& b) {
  if (a.inf_ && b.inf_) return std::strong_ordering::equal;
  if (a.inf_) return std::strong_ordering::greater;
  if (b.inf_) return std::strong_ordering::less;
  return a.v_ <=> b.v_;
}

std::ostream& operator<<(std::ostream& os, const RatInf& r) { return os << r.str(); }

}  // namespace nonarch
