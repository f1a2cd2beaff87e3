#pragma once

#include <cstdint>
#include <string>

#include "mockq/rational.hpp"

namespace mockq {

/// alpha = (A / 2C) tau + a / 4. Construction rejects gcd(A, C) != 1, C < 1,
/// a outside {0,1,2,3}, and C = 1 with a even (then 2 alpha is a lattice point).
class AlphaParams {
 public:
  AlphaParams(std::int64_t A, std::int64_t C, int a);

  std::int64_t A() const { return A_; }
  std::int64_t C() const { return C_; }
  int a() const { return a_; }
  bool a_odd() const { return a_ % 2 != 0; }

  Rational ratio() const { return Rational(A_, C_); }
  /// (2A - C)^2 / (8 C^2), the negated q-exponent of the prefactor.
  Rational prefactor_exponent() const;

  /// 0 < A < C, and A/C != 1/2 when a is odd: the range where the quantum
  /// transformation laws are claimed.
  bool theorem_ready() const;

  std::string str() const;
  friend bool operator==(const AlphaParams&, const AlphaParams&) = default;

 private:
  std::int64_t A_;
  std::int64_t C_;
  int a_;
};

/// h / k with k >= 1, gcd(h, k) = 1 and h odd.
struct RationalPoint {
  std::int64_t h = 1;
  std::int64_t k = 1;

  RationalPoint() = default;
  RationalPoint(std::int64_t h_, std::int64_t k_);

  Rational value() const { return Rational(h, k); }
  double to_double() const { return static_cast<double>(h) / static_cast<double>(k); }
  std::string str() const { return std::to_string(h) + "/" + std::to_string(k); }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Reduces h / k (k != 0) and returns it as a RationalPoint if the numerator
/// of the reduced fraction is odd; otherwise throws NotInQuantumSet.
RationalPoint make_rational_point(std::int64_t h, std::int64_t k);

}  // namespace mockq
