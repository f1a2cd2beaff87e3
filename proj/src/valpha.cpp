#include "mockq/valpha.hpp"

#include <cmath>

#include "mockq/mordell.hpp"
#include "mockq/qseries.hpp"
#include "mockq/quantum_sets.hpp"

namespace mockq {

namespace {

struct Args {
  cplx u;
  cplx v;
  cplx pre;  // i^{a+1} q^{-P}
};

Args args_at(const AlphaParams& al, cplx t) {
  const double p = al.prefactor_exponent().to_double();
  return {al.ratio().to_double() * t + 0.5 * al.a(), 0.5 * t, e2pi(Rational(al.a() + 1, 4)) * e2pi(-p * t)};
}

cplx sign_pow(std::int64_t n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void require_theorem(const AlphaParams& al, const char* who) {
  if (!al.theorem_ready()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(who) + ": needs 0 < A < C, and A/C != 1/2 for odd a; got (" + al.str() + ")");
  }
}

EvalResult v_rational(const AlphaParams& al, const RationalPoint& p) {
  if (!set_member(SetSpec::salpha(al), p)) {
    throw Error(ErrorKind::kNotInQuantumSet, p.str() + " is not in S_alpha for alpha = (" + al.str() + ")");
  }
  const Rational z_phase = Rational(al.a(), 4) + Rational(static_cast<__int128>(al.A()) * p.h, 2 * al.C() * p.k);
  const EvalResult g = g2_at_root(z_phase, p.h, p.k);
  // i^{a+1} e(-P h/k) * i e(h / (8k))
  const Rational phase = Rational(al.a() + 2, 4) - al.prefactor_exponent() * Rational(p.h, p.k) + Rational(p.h, 8 * p.k);
  return {e2pi(phase) * g.value, g.err_bound, g.terms_used};
}

cplx v_value(const AlphaParams& al, const TauPoint& tau, const TruncationPolicy& policy) {
  return v_alpha(al, tau, policy).value;
}

// M_r tau as a TauPoint, rejecting the pole -1/r.
TauPoint m_image(int r, const TauPoint& tau) {
  if (const auto* p = std::get_if<RationalPoint>(&tau)) {
    std::int64_t h, k;
    if (!act_on_rational(1, 0, r, 1, p->h, p->k, h, k)) {
      throw Error(ErrorKind::kSingularEndpoint, "tau = -1/" + std::to_string(r) + " is excluded");
    }
    return make_rational_point(h, k);
  }
  const cplx t = std::get<UpperHalfPoint>(tau).value();
  return UpperHalfPoint(t / (static_cast<double>(r) * t + 1.0));
}

TauPoint t_image(std::int64_t r, const TauPoint& tau) {
  if (const auto* p = std::get_if<RationalPoint>(&tau)) return make_rational_point(p->h + r * p->k, p->k);
  const UpperHalfPoint& t = std::get<UpperHalfPoint>(tau);
  return UpperHalfPoint(t.re + static_cast<double>(r), t.im);
}

cplx as_complex(const TauPoint& tau) {
  if (const auto* p = std::get_if<RationalPoint>(&tau)) return {p->to_double(), 0.0};
  return std::get<UpperHalfPoint>(tau).value();
}

}  // namespace

EvalResult v_alpha(const AlphaParams& al, const TauPoint& tau, const TruncationPolicy& policy) {
  if (const auto* p = std::get_if<RationalPoint>(&tau)) return v_rational(al, *p);
  const UpperHalfPoint& t = std::get<UpperHalfPoint>(tau);
  const Args g = args_at(al, t.value());
  const EvalResult m = mu(g.u, g.v, t, policy);
  return {g.pre * m.value, std::abs(g.pre) * m.err_bound, m.terms_used};
}

EvalResult v_hat(const AlphaParams& al, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const Args g = args_at(al, tau.value());
  const EvalResult m = mu_hat(g.u, g.v, tau, policy);
  return {g.pre * m.value, std::abs(g.pre) * m.err_bound, m.terms_used};
}

EvalResult m_hat(CharPair ab, cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const cplx t = tau.value();
  if (std::abs((u - v) - (ab.a * t - ab.b)) > 1e-12 * std::max(1.0, std::abs(u - v))) {
    throw Error(ErrorKind::kInconsistentArguments, "m_hat: u - v must equal a tau - b");
  }
  const EvalResult m = mu_hat(u, v, tau, policy);
  const cplx pre = -std::sqrt(2.0) * e2pi(ab.a * (ab.b + 0.5)) * e2pi(-0.5 * ab.a * ab.a * t);
  return {pre * m.value, std::abs(pre) * m.err_bound, m.terms_used};
}

EvalResult v_hat_via_m_hat(const AlphaParams& al, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const Args g = args_at(al, tau.value());
  const Rational slope = al.ratio() - Rational(1, 2);
  const EvalResult m = m_hat({slope.to_double(), -0.5 * al.a()}, g.u, g.v, tau, policy);
  // -(i^{a+1} / sqrt 2) e((A/C - 1/2)(a - 1)/2)
  const cplx pre = -e2pi(Rational(al.a() + 1, 4) + slope * Rational(al.a() - 1, 2)) / std::sqrt(2.0);
  return {pre * m.value, std::abs(pre) * m.err_bound, m.terms_used};
}

double laplacian_residual(const AlphaParams& al, const UpperHalfPoint& tau, double step,
                          const TruncationPolicy& policy, LaplacianTarget target, double weight) {
  if (!(step >= 1e-4 && step <= 1e-2)) throw Error(ErrorKind::kInvalidArgument, "laplacian: step must lie in [1e-4, 1e-2]");
  auto f = [&](double dx, double dy) {
    const UpperHalfPoint p(tau.re + dx, tau.im + dy);
    return target == LaplacianTarget::kCompleted ? v_hat(al, p, policy).value : v_alpha(al, p, policy).value;
  };
  const cplx f0 = f(0, 0);
  const cplx fxp = f(step, 0), fxm = f(-step, 0), fyp = f(0, step), fym = f(0, -step);
  const cplx fx = (fxp - fxm) / (2.0 * step);
  const cplx fy = (fyp - fym) / (2.0 * step);
  const cplx lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (step * step);
  const double y = tau.im;
  const cplx delta = -y * y * lap + kI * weight * y * (fx + kI * fy);
  return std::abs(delta) / std::max(1.0, std::abs(f0));
}

double mock_transform_residual(const AlphaParams& al, const IntMatrix2& g, const UpperHalfPoint& tau,
                               const TruncationPolicy& policy) {
  const TildeShift ts = tilde_decompose(al, g);
  const Rational expo = phi_exponent(al, g) - Rational(3) * eta_psi(g);
  const cplx factor = sign_pow(ts.k + ts.l + ts.r + ts.s) * e2pi(expo) * principal_sqrt(g.cocycle(tau.value()));
  const cplx lhs = v_hat(al, UpperHalfPoint(g.apply(tau.value())), policy).value;
  const cplx rhs = factor * v_hat(al, tau, policy).value;
  return std::abs(lhs - rhs);
}

EvalResult m_period_term(const AlphaParams& al, int r, cplx tau, const TruncationPolicy& policy) {
  const CharPair ch{al.ratio().to_double(), 0.5 - 0.5 * al.a()};
  const EvalResult p = period_integral(ch, PathSpec::from_point(1.0 / r), tau, policy);
  const Rational phase = al.ratio() * Rational(al.a() - 1, 2) + Rational(r * (al.a() + 1) * (al.a() + 1), 8);
  const cplx pre = 0.5 * kI * principal_sqrt(static_cast<double>(r) * tau + 1.0) * e2pi(phase);
  return {pre * p.value, std::abs(pre) * p.err_bound, p.terms_used};
}

EvalResult m_mordell_terms(const AlphaParams& al, int r, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const cplx t = tau.value();
  const double a = al.a();
  const double ac = al.ratio().to_double();
  const cplx tr = -1.0 / t - static_cast<double>(r);
  const EvalResult hi = mordell_h(0.5 * a * tr - (ac - 0.5), UpperHalfPoint(tr), MordellMethod::kQuadrature, policy);
  const cplx pre_i = 0.5 * e2pi(Rational(al.a() * al.A(), 2 * al.C())) * e2pi(-a * a * tr / 8.0) * principal_sqrt(-kI * tr);
  const EvalResult hj = mordell_h((0.5 - ac) * t - 0.5 * a, tau, MordellMethod::kQuadrature, policy);
  const Rational phase_j = Rational(al.a(), 4) + Rational(al.a() * r, 4) + Rational((al.a() * al.a() + 1) * r, 8);
  const cplx pre_j = -0.5 * e2pi(phase_j) * principal_sqrt(static_cast<double>(r) * t + 1.0) *
                     e2pi(-0.5 * (0.5 - ac) * (0.5 - ac) * t);
  return {pre_i * hi.value + pre_j * hj.value, std::abs(pre_i) * hi.err_bound + std::abs(pre_j) * hj.err_bound,
          hi.terms_used + hj.terms_used};
}

double qm_residual_m(const AlphaParams& al, int r, const TauPoint& tau, MForm form, const TruncationPolicy& policy) {
  require_theorem(al, "qm_residual_m");
  if (r != 1 && r != 2) throw Error(ErrorKind::kInvalidArgument, "qm_residual_m: r must be 1 or 2");
  if ((al.a() * r) % 2 != 0) throw Error(ErrorKind::kInvalidArgument, "qm_residual_m: a r / 2 must be an integer");
  if (form == MForm::kPart1 && (al.a_odd() || r != 1)) {
    throw Error(ErrorKind::kInvalidArgument, "qm_residual_m: the r = 1 law needs a in {0, 2}");
  }
  if (form == MForm::kPart2 && (!al.a_odd() || r != 2)) {
    throw Error(ErrorKind::kInvalidArgument, "qm_residual_m: the r = 2 law needs a in {1, 3}");
  }
  const TauPoint mt = m_image(r, tau);
  const cplx t = as_complex(tau);
  const cplx v = v_value(al, tau, policy);
  const cplx vm = v_value(al, mt, policy);
  const double ac = al.ratio().to_double();
  switch (form) {
    case MForm::kPart1: {
      const EvalResult p = period_integral({ac, 0.5}, PathSpec::from_point(1.0), t, policy);
      const cplx rhs = -0.5 * kI * e2pi(Rational(-al.A(), 2 * al.C())) * p.value;
      return std::abs(v - e2pi(Rational(-1, 8)) / principal_sqrt(t + 1.0) * vm - rhs);
    }
    case MForm::kPart2: {
      const EvalResult p = period_integral({ac, 0.0}, PathSpec::from_point(0.5), t, policy);
      const cplx rhs = -0.5 * kI * p.value;
      return std::abs(v - vm / principal_sqrt(2.0 * t + 1.0) - rhs);
    }
    case MForm::kGeneral: {
      const Rational phase = Rational(al.a() * r, 4) + Rational((al.a() * al.a() + 1) * r, 8);
      const cplx main = e2pi(phase) * principal_sqrt(static_cast<double>(r) * t + 1.0) * v;
      return std::abs(vm - main - m_period_term(al, r, t, policy).value);
    }
  }
  return 0.0;
}

double qm_residual_t(const AlphaParams& al, std::int64_t r, const TauPoint& tau, TForm form,
                     const TruncationPolicy& policy) {
  const std::int64_t c = al.C();
  const std::int64_t expected = c % 2 == 0 ? c : 2 * c;
  if (r != expected) {
    throw Error(ErrorKind::kInvalidArgument, "qm_residual_t: r must be " + std::to_string(expected));
  }
  const cplx v = v_value(al, tau, policy);
  const cplx vt = v_value(al, t_image(r, tau), policy);
  const Rational d(2 * al.A() - c, c);
  if (form == TForm::kProposition) {
    // zeta_8^{-r} (-1)^{A r / C + r / 2} e(-(r/2)(A/C - 1/2)^2)
    const Rational slope = al.ratio() - Rational(1, 2);
    const Rational phase = Rational(-r, 8) + Rational(al.A() * r / c + r / 2, 2) - Rational(r, 2) * slope * slope;
    return std::abs(vt - e2pi(phase) * v);
  }
  if (c % 2 == 0) {
    const Rational phase = Rational(al.A() + c / 2, 2) + Rational(c, 8) + Rational(c) * d * d * Rational(1, 8);
    return std::abs(v - e2pi(phase) * vt);
  }
  const Rational phase = Rational(c, 4) + Rational(c) * d * d * Rational(1, 4);
  return std::abs(v + e2pi(phase) * vt);
}

double branch_residual(int r, cplx tau) {
  const cplx tr = -1.0 / tau - static_cast<double>(r);
  return std::abs(principal_sqrt(-kI * tr) * principal_sqrt(-kI * tau) - principal_sqrt(static_cast<double>(r) * tau + 1.0));
}

std::vector<CatalogEntry> catalog_tuples() {
  return {{"V11", AlphaParams(1, 4, 1)},   {"V21", AlphaParams(1, 4, 0)},   {"V31", AlphaParams(1, 3, 1)},
          {"V4'1", AlphaParams(1, 12, 0)}, {"V4''1", AlphaParams(5, 12, 0)}, {"V51", AlphaParams(1, 6, 1)},
          {"V61", AlphaParams(1, 3, 0)}};
}

}  // namespace mockq
