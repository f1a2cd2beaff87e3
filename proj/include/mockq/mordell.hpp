#pragma once

// Mordell integral h(u; tau), the boundary-safe g_{a,b} evaluator, period
// integrals of g_{a,b}(z) / sqrt(-i(z + tau)) along vertical lines, and the
// delta_{x,y} combination that ties the two together.

#include "mockq/types.hpp"

namespace mockq {

enum class MordellMethod { kQuadrature, kMuIdentity };

/// h(u; tau) = int_R exp(pi i tau x^2 - 2 pi u x) / cosh(pi x) dx.
///
/// kQuadrature first shifts u by an integer so that |Re u| <= 1/2 (using
/// h(z) + h(z+1) = 2 (-i tau)^{-1/2} exp(pi i (z+1/2)^2 / tau)), then runs a
/// trapezoid rule with step halving from 0.05 and the halving difference as
/// error estimate. kMuIdentity evaluates the Appell-Lerch inversion law with
/// the split u = (u - v) + v, v = tau / 2.
EvalResult mordell_h(cplx u, const UpperHalfPoint& tau, MordellMethod method = MordellMethod::kQuadrature,
                     const TruncationPolicy& policy = {});

/// g_{a,b}(z) for any Im z > 0. Points with Im z < 1/2 are first mapped up by
/// translations and z -> -1/z, accumulating the automorphy factor.
EvalResult g_eval_reduced(CharPair ch, cplx z, const TruncationPolicy& policy = {});

/// Number of translation/inversion steps g_eval_reduced needs at z.
int reduction_steps(cplx z);

struct PathSpec {
  enum class Kind { kFromPoint, kFromMinusConjTau };
  Kind kind = Kind::kFromPoint;
  double start = 0.0;   // real lower limit d for kFromPoint
  double split_t = 1.0;
  double tail_t = 0.0;  // filled in by period_integral

  static PathSpec from_point(double d) { return {Kind::kFromPoint, d, 1.0, 0.0}; }
  static PathSpec from_minus_conj_tau() { return {Kind::kFromMinusConjTau, 0.0, 1.0, 0.0}; }
};

/// int_{start}^{i infinity} g_{a,b}(z) / sqrt(-i(z + tau)) dz along the vertical
/// line through the start point. tau may be real (Im tau = 0) for kFromPoint,
/// except within 1e-3 of tau = -start (SingularEndpoint).
EvalResult period_integral(CharPair ch, PathSpec& path, cplx tau, const TruncationPolicy& policy = {});
EvalResult period_integral(CharPair ch, const PathSpec& path, cplx tau, const TruncationPolicy& policy = {});

/// delta_{x,y}(tau) = int_0^{i inf} g_{x+1/2, y+1/2}(z) / sqrt(-i(z+tau)) dz
///                   + e(x (y + 1/2)) q^{-x^2/2} h(x tau - y; tau).
EvalResult delta(double x, double y, const UpperHalfPoint& tau, const TruncationPolicy& policy = {},
                 MordellMethod method = MordellMethod::kQuadrature);

/// Smallest nonzero |nu| over nu in a + Z.
double min_nonzero_abs(double a);

}  // namespace mockq
