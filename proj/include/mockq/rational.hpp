#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

#include "mockq/types.hpp"

namespace mockq {

/// Exact rational with 64-bit terms; arithmetic runs in 128 bits and throws
/// Overflow if a reduced result does not fit back.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(__int128 num, __int128 den = 1) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Representative in [0, 1).
  Rational frac() const {
    __int128 r = static_cast<__int128>(num_) % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return Rational(static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_,
                    static_cast<__int128>(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x) { return Rational(-static_cast<__int128>(x.num_), x.den_); }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return Rational(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
  }
  friend bool operator==(const Rational& x, const Rational& y) = default;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  void assign(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline void Rational::assign(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::kInvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) throw Error(ErrorKind::kOverflow, "rational out of 64-bit range");
  num_ = static_cast<std::int64_t>(num);
  den_ = static_cast<std::int64_t>(den);
}

/// exp(2 pi i r), computed from the reduced fraction so the phase carries no
/// accumulated roundoff.
inline cplx e2pi(const Rational& r) {
  const Rational f = r.frac();
  return std::polar(1.0, 2.0 * kPi * f.to_double());
}

/// 1 - exp(2 pi i r) = -2i sin(pi r) exp(pi i r), accurate when r is near an integer.
inline cplx one_minus_e2pi(const Rational& r) {
  Rational f = r.frac();
  if (f.to_double() > 0.5) f = f - Rational(1);
  const double t = f.to_double();
  return -2.0 * kI * std::sin(kPi * t) * std::polar(1.0, kPi * t);
}

}  // namespace mockq
