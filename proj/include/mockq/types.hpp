#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mockq {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  kImTooSmall,
  kSingularInput,
  kSingularDenominator,
  kDivergentModulus,
  kQuadratureFailure,
  kReductionOverflow,
  kSingularEndpoint,
  kNotInGroup,
  kUnknownMembership,
  kSamplingFailure,
  kOverflow,
  kNotInQuantumSet,
  kInconsistentArguments,
  kUnknownSuite,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A point tau = re + i*im of the upper half-plane.
struct UpperHalfPoint {
  double re = 0.0;
  double im = 1.0;

  UpperHalfPoint() = default;
  UpperHalfPoint(double re_, double im_);
  explicit UpperHalfPoint(cplx tau);

  cplx value() const { return {re, im}; }
};

struct TruncationPolicy {
  double target_abs_err = 1e-12;
  long max_terms = 1'000'000;
  double min_im = 0.05;
  double quad_rel_tol = 1e-11;
  int quad_max_depth = 40;

  void validate() const;
};

struct EvalResult {
  cplx value{};
  double err_bound = 0.0;
  long terms_used = 0;
};

/// Characteristic (a, b) of g_{a,b}.
struct CharPair {
  double a = 0.0;
  double b = 0.0;
};

// e(x) = exp(2 pi i x)
inline cplx e2pi(double x) { return std::polar(1.0, 2.0 * kPi * x); }
inline cplx e2pi(cplx x) { return std::exp(2.0 * kPi * kI * x); }

/// Principal square root with arg in (-pi/2, pi/2]; a signed zero imaginary
/// part on the negative axis is treated as +0.
inline cplx principal_sqrt(cplx w) {
  if (w.imag() == 0.0) w = {w.real(), 0.0};
  return std::sqrt(w);
}

/// ((w)^{1/2})^3
inline cplx principal_pow32(cplx w) {
  const cplx s = principal_sqrt(w);
  return s * s * s;
}

void require_im(const UpperHalfPoint& tau, const TruncationPolicy& policy, const char* who);

}  // namespace mockq
