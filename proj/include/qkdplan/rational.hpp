#ifndef QKDPLAN_RATIONAL_HPP
#define QKDPLAN_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkdplan {

// Exact rational arithmetic for prices, probabilities and objective values.
// Wavelength counts stay in plain integers; only money and probability mass
// go through Rational. Overflow in a product or sum throws instead of
// wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  static Rational from_decimal_string(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return make_raw(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    return from_wide(n, d);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Nearest integer, halves rounded up (toward +infinity).
  std::int64_t round_half_up() const;

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Fixed-point decimal with `places` digits, round half away from zero.
  // Used for all serialized money values so output is byte-stable.
  std::string to_fixed_string(int places) const;

  // "n/d" (or "n" when integral); for reports and debugging.
  std::string to_fraction_string() const;

 private:
  static Rational make_raw(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  static Rational from_wide(__int128 n, __int128 d);
  void normalize();

  std::int64_t num_;
  std::int64_t den_;  // > 0
};

// Ceiling of a/b, clamped below at zero (component counts are never
// negative). b must be positive.
inline std::int64_t ceil_div_clamped(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw std::domain_error("ceil_div_clamped: nonpositive divisor");
  if (a <= 0) return 0;
  return (a + b - 1) / b;
}

}  // namespace qkdplan

#endif
