#pragma once

// Direct-series evaluators for the holomorphic and non-holomorphic building
// blocks: eta, the Jacobi theta function, the Appell-Lerch sum mu, the
// correction R, its completion mu_hat, the weight-3/2 unary theta series
// g_{a,b}, the universal mock theta function g_2 and q-Pochhammer symbols.
//
// Every evaluator returns an EvalResult whose err_bound combines an explicit
// tail majorant with a roundoff estimate proportional to the sum of absolute
// term sizes.

#include <optional>

#include "mockq/rational.hpp"
#include "mockq/types.hpp"

namespace mockq {

EvalResult eta(const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

enum class ThetaMode { kSum, kProduct };

/// vartheta(z; tau) = sum over nu in 1/2 + Z of exp(pi i nu^2 tau + 2 pi i nu (z + 1/2)).
EvalResult theta(cplx z, const UpperHalfPoint& tau, ThetaMode mode = ThetaMode::kSum,
                 const TruncationPolicy& policy = {});

/// Appell-Lerch sum mu(u, v; tau). Throws SingularInput when u or v sits on
/// the lattice Z tau + Z.
EvalResult mu(cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// Non-holomorphic correction
/// R(u; tau) = sum over nu in 1/2 + Z of (sgn(nu) - erf(sqrt(2 pi y) (nu + Im u / y)))
///             (-1)^{nu - 1/2} exp(-pi i nu^2 tau - 2 pi i nu u),  y = Im tau.
EvalResult r_corr(cplx u, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// mu(u, v; tau) + (i/2) R(u - v; tau).
EvalResult mu_hat(cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// g_{a,b}(tau) = sum over nu in a + Z of nu exp(pi i nu^2 tau + 2 pi i nu b).
EvalResult g_ab(CharPair ch, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// g_2(z; qhalf). For |qhalf| < 1 the series is truncated with a geometric
/// tail bound; for |qhalf| = 1 the point must be exp(pi i h / k) with h odd and
/// the sum terminates after k terms.
EvalResult g2(cplx z, cplx qhalf, const TruncationPolicy& policy = {});

/// Terminating g_2(z; exp(pi i h / k)), h odd, gcd(h, k) = 1, k >= 1.
EvalResult g2_at_root(cplx z, std::int64_t h, std::int64_t k);

/// Same sum with z = exp(2 pi i z_phase) given exactly; every denominator
/// factor 1 - z Q^j is then a phase difference evaluated without cancellation.
EvalResult g2_at_root(const Rational& z_phase, std::int64_t h, std::int64_t k);

/// (x; q)_n, or (x; q)_infinity when n is empty.
EvalResult pochhammer(cplx x, cplx q, std::optional<long> n, const TruncationPolicy& policy = {});

/// Coordinates (s, t) of w = s tau + t in the basis (tau, 1).
struct LatticeCoords {
  double s;
  double t;
};
LatticeCoords lattice_coords(cplx w, const UpperHalfPoint& tau);

/// Sup-distance of w from the lattice Z tau + Z measured in lattice coordinates.
double lattice_distance(cplx w, const UpperHalfPoint& tau);

}  // namespace mockq
