#include "mockq/mordell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mockq/qseries.hpp"
#include "mockq/quadrature.hpp"
#include "series_sum.hpp"

namespace mockq {

namespace {

constexpr double kReducedIm = 0.5;
constexpr int kMaxReductionSteps = 64;

// 2 (-i tau)^{-1/2} exp(pi i (w + 1/2)^2 / tau)
cplx h_shift_term(cplx w, cplx tau) {
  return 2.0 / principal_sqrt(-kI * tau) * std::exp(kPi * kI * (w + 0.5) * (w + 0.5) / tau);
}

EvalResult mordell_trapezoid(cplx z, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const cplx t = tau.value();
  const double y = tau.im;
  const double re = std::abs(z.real());
  const double log_target = std::log(1.0 / policy.target_abs_err) + 3.0;
  // pi y X^2 - 2 pi |Re z| X > log_target
  const double x_max = std::max(
      1.0, (2.0 * kPi * re + std::sqrt(4.0 * kPi * kPi * re * re + 4.0 * kPi * y * log_target)) / (2.0 * kPi * y));
  auto f = [&](double x) {
    const double ax = std::abs(x);
    // 1 / cosh(pi x) = 2 e^{-pi |x|} / (1 + e^{-2 pi |x|})
    return std::exp(kPi * kI * t * x * x - 2.0 * kPi * z * x - kPi * ax) * (2.0 / (1.0 + std::exp(-2.0 * kPi * ax)));
  };

  double step = 0.05;
  long n = static_cast<long>(std::ceil(x_max / step));
  cplx sum = f(0.0);
  double abs_sum = std::abs(sum);
  for (long j = 1; j <= n; ++j) {
    const cplx fp = f(j * step);
    const cplx fm = f(-j * step);
    sum += fp + fm;
    abs_sum += std::abs(fp) + std::abs(fm);
  }
  cplx coarse = step * sum;
  long evals = 2 * n + 1;
  for (int halving = 0; halving < 12; ++halving) {
    const double fine_step = 0.5 * step;
    cplx odd = 0.0;
    for (long j = 0; j < n; ++j) {
      const double x = (2 * j + 1) * fine_step;
      const cplx fp = f(x);
      const cplx fm = f(-x);
      odd += fp + fm;
      abs_sum += std::abs(fp) + std::abs(fm);
    }
    evals += 2 * n;
    sum += odd;
    const cplx fine = fine_step * sum;
    const double diff = std::abs(fine - coarse);
    step = fine_step;
    n *= 2;
    if (diff <= std::max(policy.quad_rel_tol * std::abs(fine), 0.1 * policy.target_abs_err) || halving == 11) {
      // tail beyond |x| > x_max, both sides
      const double expo = -kPi * y * x_max * x_max + 2.0 * kPi * re * x_max - kPi * x_max;
      const double slope = 2.0 * kPi * y * x_max - 2.0 * kPi * re + kPi;
      const double tail = 4.0 * std::exp(expo) / std::max(slope, 1.0);
      const double err = diff + tail + detail::roundoff(abs_sum * step, evals);
      if (diff > std::max(policy.quad_rel_tol * std::abs(fine), 0.1 * policy.target_abs_err) &&
          diff > 1e3 * policy.target_abs_err) {
        throw Error(ErrorKind::kQuadratureFailure, "mordell_h: trapezoid halving did not settle");
      }
      return {fine, err, evals};
    }
    coarse = fine;
  }
  throw Error(ErrorKind::kQuadratureFailure, "mordell_h: unreachable");
}

EvalResult mordell_quadrature(cplx u, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const cplx t = tau.value();
  const long m = std::lround(u.real());
  const cplx z0 = u - static_cast<double>(m);
  EvalResult res = mordell_trapezoid(z0, tau, policy);
  cplx h = res.value;
  double shift_abs = 0.0;
  if (m > 0) {
    for (long j = 0; j < m; ++j) {
      const cplx s = h_shift_term(z0 + static_cast<double>(j), t);
      h = s - h;  // h(w + 1) = F(w) - h(w)
      shift_abs += std::abs(s);
    }
  } else {
    for (long j = 0; j > m; --j) {
      const cplx s = h_shift_term(z0 + static_cast<double>(j - 1), t);
      h = s - h;  // h(w - 1) = F(w - 1) - h(w)
      shift_abs += std::abs(s);
    }
  }
  res.value = h;
  res.err_bound += 4.0 * detail::kEps * shift_abs;
  return res;
}

EvalResult mordell_mu_identity(cplx z, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const cplx t = tau.value();
  const UpperHalfPoint inv(-1.0 / t);
  // split z = u - v with both u and v well away from the lattice
  static constexpr std::array<std::array<double, 2>, 6> kSplits = {
      {{0.5, 0.0}, {0.5, 1.0 / 3.0}, {1.0 / 3.0, 0.5}, {0.25, 0.25}, {0.7, 0.15}, {0.4, 0.6}}};
  for (const auto& [vs, vt] : kSplits) {
    const cplx v = vs * t + vt;
    const cplx u = z + v;
    if (lattice_distance(u, tau) < 0.05 || lattice_distance(v, tau) < 0.05) continue;
    const EvalResult m1 = mu(u / t, v / t, inv, policy);
    const EvalResult m2 = mu(u, v, tau, policy);
    const cplx pre = std::exp(kPi * kI * (u - v) * (u - v) / t) / principal_sqrt(-kI * t);
    const cplx value = 2.0 * kI * (pre * m1.value + m2.value);
    const double err = 2.0 * (std::abs(pre) * m1.err_bound + m2.err_bound);
    return {value, err, m1.terms_used + m2.terms_used};
  }
  throw Error(ErrorKind::kSingularInput, "mordell_h: no lattice-safe split u = (u - v) + v found");
}

}  // namespace

EvalResult mordell_h(cplx u, const UpperHalfPoint& tau, MordellMethod method, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "mordell_h");
  if (method == MordellMethod::kMuIdentity) return mordell_mu_identity(u, tau, policy);
  return mordell_quadrature(u, tau, policy);
}

int reduction_steps(cplx z) {
  int steps = 0;
  while (z.imag() < kReducedIm) {
    if (++steps > kMaxReductionSteps) return steps;
    z -= std::floor(z.real() + 0.5);
    if (z.imag() >= kReducedIm) break;
    z = -1.0 / z;
  }
  return steps;
}

EvalResult g_eval_reduced(CharPair ch, cplx z, const TruncationPolicy& policy) {
  policy.validate();
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::kInvalidArgument, "g_eval_reduced: Im z must be positive");
  double a = ch.a;
  double b = ch.b;
  cplx factor = 1.0;
  int steps = 0;
  while (z.imag() < kReducedIm) {
    if (++steps > kMaxReductionSteps) {
      throw Error(ErrorKind::kReductionOverflow, "g_eval_reduced: more than 64 reduction steps");
    }
    // g_{a,b}(w + n) = e^{-pi i a (a+1) n} g_{a, b + n (a + 1/2)}(w)
    const double n = std::floor(z.real() + 0.5);
    if (n != 0.0) {
      factor *= std::exp(-kPi * kI * a * (a + 1.0) * n);
      b += n * (a + 0.5);
      z -= n;
    }
    // g_{a,b} = e(a k) g_{a,b-k}
    const double kb = std::floor(b);
    if (kb != 0.0) {
      factor *= e2pi(a * kb);
      b -= kb;
    }
    if (z.imag() >= kReducedIm) break;
    // g_{a,b}(-1/w) = i e(ab) (-i w)^{3/2} g_{b,-a}(w)
    const cplx w = -1.0 / z;
    factor *= kI * e2pi(a * b) * principal_pow32(-kI * w);
    const double na = b;
    const double nb = -a;
    a = na - std::floor(na);  // g_{a+1,b} = g_{a,b}
    b = nb;
    z = w;
  }
  TruncationPolicy inner = policy;
  const double af = std::abs(factor);
  if (af > 1.0) inner.target_abs_err = std::max(policy.target_abs_err / af, 1e-300);
  inner.min_im = std::min(policy.min_im, kReducedIm);
  const EvalResult g = g_ab({a, b}, UpperHalfPoint(z), inner);
  return {factor * g.value, af * g.err_bound + 8.0 * detail::kEps * std::abs(factor * g.value) * (steps + 1),
          g.terms_used};
}

double min_nonzero_abs(double a) {
  const double f = a - std::floor(a);
  if (f == 0.0) return 1.0;
  return std::min(f, 1.0 - f);
}

namespace {

// C e^{-pi mu^2 T} / (pi mu^2 sqrt(T)) with C = 2 * sum of |nu| e^{2 pi |nu| |b|} over the four smallest |nu|.
double period_tail(CharPair ch, double t_cut) {
  const double f = ch.a - std::floor(ch.a);
  std::array<double, 8> cands = {f, 1.0 - f, 1.0 + f, 2.0 - f, 2.0 + f, 3.0 - f, 3.0 + f, 4.0 - f};
  std::sort(cands.begin(), cands.end());
  double c = 0.0;
  int used = 0;
  for (double nu : cands) {
    if (nu <= 0.0) continue;
    c += nu * std::exp(2.0 * kPi * nu * std::abs(ch.b - std::round(ch.b)));
    if (++used == 4) break;
  }
  c *= 2.0;
  const double mu = min_nonzero_abs(ch.a);
  return c * std::exp(-kPi * mu * mu * t_cut) / (kPi * mu * mu * std::sqrt(t_cut));
}

}  // namespace

EvalResult period_integral(CharPair ch, PathSpec& path, cplx tau, const TruncationPolicy& policy) {
  policy.validate();
  if (tau.imag() < 0.0) throw Error(ErrorKind::kInvalidArgument, "period_integral: Im tau must be >= 0");
  cplx base;
  if (path.kind == PathSpec::Kind::kFromPoint) {
    if (tau.imag() < 1e-3 && std::abs(path.start + tau.real()) < 1e-3) {
      std::ostringstream os;
      os << "period_integral: tau = " << tau.real() << " is within 1e-3 of the excluded point " << -path.start;
      throw Error(ErrorKind::kSingularEndpoint, os.str());
    }
    base = path.start;
  } else {
    if (!(tau.imag() > 0.0)) throw Error(ErrorKind::kInvalidArgument, "period_integral: -conj(tau) path needs tau in H");
    base = -std::conj(tau);
  }
  const double split = path.split_t;
  const double target = policy.target_abs_err;

  double t_cut = std::max(2.0 * split, 2.0);
  while (period_tail(ch, t_cut) > 0.1 * target) t_cut *= 1.25;
  path.tail_t = t_cut;
  const double tail = period_tail(ch, t_cut);

  TruncationPolicy inner = policy;
  inner.target_abs_err = std::max(0.01 * target, 1e-16);
  inner.min_im = std::min(policy.min_im, split);
  auto integrand = [&](double t, bool near) -> cplx {
    const cplx z = base + kI * t;
    const EvalResult g = near ? g_eval_reduced(ch, z, inner) : g_ab(ch, UpperHalfPoint(z), inner);
    return kI * g.value / principal_sqrt(-kI * (z + tau));
  };

  const double abs_tol = 0.25 * target;
  const QuadResult lower = integrate_gk15([&](double t) { return integrand(t, true); }, 0.0, split, abs_tol,
                                          policy.quad_rel_tol, policy.quad_max_depth);
  const QuadResult upper = integrate_gk15([&](double t) { return integrand(t, false); }, split, t_cut, abs_tol,
                                          policy.quad_rel_tol, policy.quad_max_depth);
  const cplx value = lower.value + upper.value;
  return {value, lower.err_estimate + upper.err_estimate + tail, lower.evals + upper.evals};
}

EvalResult period_integral(CharPair ch, const PathSpec& path, cplx tau, const TruncationPolicy& policy) {
  PathSpec copy = path;
  return period_integral(ch, copy, tau, policy);
}

EvalResult delta(double x, double y, const UpperHalfPoint& tau, const TruncationPolicy& policy,
                 MordellMethod method) {
  const cplx t = tau.value();
  const EvalResult p = period_integral({x + 0.5, y + 0.5}, PathSpec::from_point(0.0), t, policy);
  const EvalResult h = mordell_h(x * t - y, tau, method, policy);
  const cplx pre = e2pi(x * (y + 0.5)) * e2pi(-x * x * t / 2.0);
  return {p.value + pre * h.value, p.err_bound + std::abs(pre) * h.err_bound, p.terms_used + h.terms_used};
}

}  // namespace mockq
