#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nonarch {

// Exact rational with 64-bit numerator/denominator. Intermediate products are
// formed in 128 bits; a result that does not fit raises Error(Overflow).
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::int64_t floor() const;
  std::int64_t ceil() const;

  std::string str() const;
  // Accepts "p", "-p", "p/q", with optional surrounding whitespace.
  static Rational parse(std::string_view s);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 n, __int128 d);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& r, int e);
Rational abs(const Rational& r);

// A rational or +infinity; used for truncation orders and valuations.
class RatInf {
 public:
  RatInf() : inf_(true) {}
  RatInf(const Rational& r) : inf_(false), v_(r) {}  // NOLINT(implicit)
  RatInf(std::int64_t n) : inf_(false), v_(n) {}     // NOLINT(implicit)
  static RatInf infinity() { return RatInf(); }

  bool is_inf() const { return inf_; }
  const Rational& value() const;
  std::string str() const { return inf_ ? "inf" : v_.str(); }
  double to_double() const;

  friend RatInf operator+(const RatInf& a, const RatInf& b);
  friend RatInf operator-(const RatInf& a, const Rational& b);
  friend bool operator==(const RatInf& a, const RatInf& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const RatInf& a, const RatInf& b);

 private:
  bool inf_;
  Rational v_;
};

inline RatInf min(const RatInf& a, const RatInf& b) { return b < a ? b : a; }
inline RatInf max(const RatInf& a, const RatInf& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const RatInf& r);

}  // namespace nonarch

template <>
struct std::hash<nonarch::Rational> {
  std::size_t operator()(const nonarch::Rational& r) const noexcept {
    return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
  }
};
