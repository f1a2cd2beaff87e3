#include "mockq/alpha.hpp"

#include <numeric>

namespace mockq {

AlphaParams::AlphaParams(std::int64_t A, std::int64_t C, int a) : A_(A), C_(C), a_(a) {
  if (C < 1) throw Error(ErrorKind::kInvalidArgument, "alpha: C must be positive");
  if (a < 0 || a > 3) throw Error(ErrorKind::kInvalidArgument, "alpha: a must lie in {0,1,2,3}");
  if (std::gcd(A, C) != 1) throw Error(ErrorKind::kInvalidArgument, "alpha: gcd(A, C) must be 1");
  if (C == 1 && a % 2 == 0) {
    throw Error(ErrorKind::kInvalidArgument, "alpha: C = 1 with a even puts 2 alpha on the lattice");
  }
}

Rational AlphaParams::prefactor_exponent() const {
  const Rational d(2 * A_ - C_, C_);
  return d * d * Rational(1, 8);
}

bool AlphaParams::theorem_ready() const {
  if (!(0 < A_ && A_ < C_)) return false;
  return !(a_odd() && A_ == 1 && C_ == 2);
}

std::string AlphaParams::str() const {
  return std::to_string(A_) + "," + std::to_string(C_) + "," + std::to_string(a_);
}

RationalPoint::RationalPoint(std::int64_t h_, std::int64_t k_) : h(h_), k(k_) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "rational point: k must be >= 1");
  if (std::gcd(h, k) != 1) throw Error(ErrorKind::kInvalidArgument, "rational point: h/k must be reduced");
  if (h % 2 == 0) throw Error(ErrorKind::kNotInQuantumSet, "rational point: h must be odd");
}

RationalPoint make_rational_point(std::int64_t h, std::int64_t k) {
  const Rational r(h, k);
  if (r.num() % 2 == 0) throw Error(ErrorKind::kNotInQuantumSet, "rational point: reduced numerator is even");
  return RationalPoint(r.num(), r.den());
}

}  // namespace mockq
