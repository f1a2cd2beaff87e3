#pragma once

// V_alpha(tau) = i^{a+1} q^{-(2A-C)^2/(8C^2)} mu(u, v; tau) with
// u = (A/C) tau + a/2 and v = tau/2, its completion, and the residuals of its
// mock and quantum transformation laws.

#include <string>
#include <variant>
#include <vector>

#include "mockq/alpha.hpp"
#include "mockq/modgroup.hpp"
#include "mockq/types.hpp"

namespace mockq {

using TauPoint = std::variant<UpperHalfPoint, RationalPoint>;

/// On H the Appell-Lerch series; at h/k the terminating g_2 sum. Rational
/// points must lie in S_alpha (NotInQuantumSet otherwise).
EvalResult v_alpha(const AlphaParams& al, const TauPoint& tau, const TruncationPolicy& policy = {});
EvalResult v_hat(const AlphaParams& al, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// -sqrt(2) e(a (b + 1/2)) q^{-a^2/2} mu_hat(u, v; tau); requires u - v = a tau - b.
EvalResult m_hat(CharPair ab, cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

/// V_hat expressed through M_hat_{A/C - 1/2, -a/2}.
EvalResult v_hat_via_m_hat(const AlphaParams& al, const UpperHalfPoint& tau, const TruncationPolicy& policy = {});

enum class LaplacianTarget { kCompleted, kHolomorphic };

/// |Delta_k f| / max(1, |f|) with f = V_hat (or V) and
/// Delta_k = -y^2 (d_xx + d_yy) + i k y (d_x + i d_y), by 5-point central differences.
double laplacian_residual(const AlphaParams& al, const UpperHalfPoint& tau, double step = 1e-3,
                          const TruncationPolicy& policy = {}, LaplacianTarget target = LaplacianTarget::kCompleted,
                          double weight = 0.5);

/// |V_hat(g tau) - psi(g)^{-3} (-1)^{k+l+r+s} phi (z tau + w)^{1/2} V_hat(tau)|.
double mock_transform_residual(const AlphaParams& al, const IntMatrix2& g, const UpperHalfPoint& tau,
                               const TruncationPolicy& policy = {});

enum class MForm { kGeneral, kPart1, kPart2 };
enum class TForm { kProposition, kPart3 };

/// Residual of the transformation under M_r = [[1,0],[r,1]].
double qm_residual_m(const AlphaParams& al, int r, const TauPoint& tau, MForm form,
                     const TruncationPolicy& policy = {});

/// Residual of the transformation under T_r = [[1,r],[0,1]], r = C (C even) or 2C (C odd).
double qm_residual_t(const AlphaParams& al, std::int64_t r, const TauPoint& tau, TForm form,
                     const TruncationPolicy& policy = {});

/// The period-integral term of the M_r law,
/// (i/2) sqrt(r tau + 1) e((A/C)(a-1)/2) e(r (a+1)^2 / 8) int_{1/r}^{i inf} g_{A/C, 1/2 - a/2}.
EvalResult m_period_term(const AlphaParams& al, int r, cplx tau, const TruncationPolicy& policy = {});

/// The Mordell-integral pieces I + J of the M_r law at tau in H.
EvalResult m_mordell_terms(const AlphaParams& al, int r, const UpperHalfPoint& tau,
                           const TruncationPolicy& policy = {});

/// |sqrt(-i tau_r) sqrt(-i tau) - sqrt(r tau + 1)| with tau_r = -1/tau - r.
double branch_residual(int r, cplx tau);

struct CatalogEntry {
  std::string name;
  AlphaParams alpha;
};
std::vector<CatalogEntry> catalog_tuples();

}  // namespace mockq
