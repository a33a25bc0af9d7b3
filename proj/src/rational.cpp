#include "qkdplan/rational.hpp"

#include <cctype>
#include <limits>

namespace qkdplan {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("Rational: value out of 64-bit range");
  return static_cast<std::int64_t>(v);
}

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

}  // namespace

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_decimal_string(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  __int128 num = 0;
  __int128 den = 1;
  bool any_digit = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad decimal: " + text);
    any_digit = true;
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    if (num > (__int128)1 << 100) throw std::overflow_error("decimal too large: " + text);
  }
  if (!any_digit) throw std::invalid_argument("bad decimal: " + text);
  if (neg) num = -num;
  return from_wide(num, den);
}

std::int64_t Rational::round_half_up() const {
  // floor(x + 1/2) == floor((2 num + den) / (2 den))
  __int128 n = (__int128)2 * num_ + den_;
  __int128 d = (__int128)2 * den_;
  __int128 q = n / d;
  if (n % d != 0 && n < 0) --q;  // floor for negatives
  return narrow(q);
}

std::string Rational::to_fixed_string(int places) const {
  __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  __int128 n = (__int128)num_ * scale;
  __int128 d = den_;
  bool neg = n < 0;
  if (neg) n = -n;
  __int128 q = n / d;
  __int128 r = n % d;
  if (2 * r >= d) ++q;  // half away from zero
  std::string digits;
  if (q == 0) digits = "0";
  while (q > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + (int)(q % 10)));
    q /= 10;
  }
  while ((int)digits.size() < places + 1) digits.insert(digits.begin(), '0');
  std::string out;
  if (neg && digits.find_first_not_of('0') != std::string::npos) out += '-';
  if (places == 0) {
    out += digits;
  } else {
    out += digits.substr(0, digits.size() - places);
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

std::string Rational::to_fraction_string() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

}  // namespace qkdplan
