#include "mockq/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "series_sum.hpp"

namespace mockq {

using detail::kEps;
using detail::roundoff;
using detail::sum_two_sided;

LatticeCoords lattice_coords(cplx w, const UpperHalfPoint& tau) {
  const double s = w.imag() / tau.im;
  return {s, w.real() - s * tau.re};
}

double lattice_distance(cplx w, const UpperHalfPoint& tau) {
  const auto [s, t] = lattice_coords(w, tau);
  return std::max(std::abs(s - std::round(s)), std::abs(t - std::round(t)));
}

namespace {

// |prod (1 + x_n) - 1| <= exp(sum |x_n| / (1 - max |x_n|)) - 1
double product_tail_rel(double sum_abs, double max_abs) {
  if (max_abs >= 1.0) return std::numeric_limits<double>::infinity();
  return std::expm1(sum_abs / (1.0 - max_abs));
}

}  // namespace

EvalResult eta(const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "eta");
  const cplx t = tau.value();
  const double aq = std::exp(-2.0 * kPi * tau.im);
  cplx prod = 1.0;
  long n = 1;
  double aqn = aq;
  // stop once |q|^n / (1 - |q|) is below the target
  for (; aqn / (1.0 - aq) >= 0.01 * policy.target_abs_err; ++n, aqn *= aq) {
    prod *= 1.0 - e2pi(static_cast<double>(n) * t);
    if (n > policy.max_terms) throw Error(ErrorKind::kQuadratureFailure, "eta: product did not converge");
  }
  const cplx value = e2pi(t / 24.0) * prod;
  const double rel = product_tail_rel(aqn / (1.0 - aq), aqn);
  const double mag = std::abs(value);
  return {value, mag * rel + 4.0 * kEps * mag * static_cast<double>(n), n - 1};
}

EvalResult theta(cplx z, const UpperHalfPoint& tau, ThetaMode mode, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "theta");
  const cplx t = tau.value();
  if (mode == ThetaMode::kSum) {
    const double y = tau.im;
    const double iz = z.imag();
    auto term = [&](long m) {
      const double nu = static_cast<double>(m) + 0.5;
      return std::exp(kPi * kI * nu * nu * t + 2.0 * kPi * kI * nu * (z + 0.5));
    };
    auto log_bound = [&](long m) {
      const double nu = static_cast<double>(m) + 0.5;
      return -kPi * y * nu * nu - 2.0 * kPi * nu * iz;
    };
    const long center = std::lround(-iz / y - 0.5);
    const double log_cut = std::log(0.01 * policy.target_abs_err);
    const auto s = sum_two_sided(term, log_bound, center, log_cut, policy.max_terms, center, center, "theta");
    return {s.sum, s.tail + roundoff(s.abs_sum, s.terms), s.terms};
  }

  // -i q^{1/8} e^{-pi i z} prod_{n>=1} (1 - q^n)(1 - X q^{n-1})(1 - q^n / X),  X = e^{2 pi i z}
  const cplx x = e2pi(z);
  const double ax = std::abs(x);
  const double aq = std::exp(-2.0 * kPi * tau.im);
  cplx prod = 1.0;
  long n = 1;
  for (;; ++n) {
    const double aqn = std::pow(aq, static_cast<double>(n));
    // remaining factors n' >= n contribute at most this much to the log
    const double rest = (aqn * (1.0 + 1.0 / ax) + ax * aqn / aq) / (1.0 - aq);
    const double biggest = std::max({aqn, ax * aqn / aq, aqn / ax});
    if (rest < 0.01 * policy.target_abs_err && biggest < 0.5) break;
    const cplx qn = e2pi(static_cast<double>(n) * t);
    const cplx qn1 = e2pi(static_cast<double>(n - 1) * t);
    prod *= (1.0 - qn) * (1.0 - x * qn1) * (1.0 - qn / x);
    if (n > policy.max_terms) throw Error(ErrorKind::kQuadratureFailure, "theta: product did not converge");
  }
  const cplx value = -kI * e2pi(t / 8.0) * std::exp(-kPi * kI * z) * prod;
  const double aqn = std::pow(aq, static_cast<double>(n));
  const double rest = (aqn * (1.0 + 1.0 / ax) + ax * aqn / aq) / (1.0 - aq);
  const double mag = std::abs(value);
  return {value, mag * product_tail_rel(rest, 0.5) + 8.0 * kEps * mag * static_cast<double>(n), n - 1};
}

EvalResult mu(cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "mu");
  if (lattice_distance(u, tau) < 1e-12 || lattice_distance(v, tau) < 1e-12) {
    throw Error(ErrorKind::kSingularInput, "mu: u or v lies on the lattice Z tau + Z");
  }
  const cplx t = tau.value();
  const double y = tau.im;
  const EvalResult th = theta(v, tau, ThetaMode::kSum, policy);
  if (std::abs(th.value) <= 1e3 * th.err_bound) {
    throw Error(ErrorKind::kSingularInput, "mu: theta(v; tau) vanishes");
  }
  const cplx pref = std::exp(kPi * kI * u) / th.value;
  const double apref = std::abs(pref);

  auto term = [&](long n) -> cplx {
    const double dn = static_cast<double>(n);
    const cplx shift = u + dn * t;  // X_n = e^{2 pi i (u + n tau)}
    const double log_ax = -2.0 * kPi * shift.imag();
    cplx expo = kPi * kI * t * (dn * (dn + 1.0)) + 2.0 * kPi * kI * dn * v;
    if (n % 2 != 0) expo += kPi * kI;
    cplx den;
    if (log_ax <= 0.0) {
      den = 1.0 - e2pi(shift);
    } else {
      expo -= 2.0 * kPi * kI * shift;
      den = e2pi(-shift) - 1.0;
    }
    if (std::abs(den) < 1e-8) {
      std::ostringstream os;
      os << "mu: 1 - e^{2 pi i u} q^n vanishes at n = " << n;
      throw Error(ErrorKind::kSingularInput, os.str());
    }
    return std::exp(expo) / den;
  };
  auto log_bound = [&](long n) {
    const double dn = static_cast<double>(n);
    const double log_ax = -2.0 * kPi * (u.imag() + dn * y);
    const double log_num = -kPi * y * dn * (dn + 1.0) - 2.0 * kPi * dn * v.imag();
    if (log_ax <= 0.0) return log_num - std::log(-std::expm1(log_ax));
    return log_num - log_ax - std::log(-std::expm1(-log_ax));
  };
  const double n_cross = -u.imag() / y;
  const long keep_lo = static_cast<long>(std::floor(n_cross)) - 1;
  const long keep_hi = static_cast<long>(std::ceil(n_cross)) + 1;
  const long center = std::lround(-(0.5 + v.imag() / y));
  const double log_cut = std::log(0.01 * policy.target_abs_err / std::max(apref, 1e-300));
  const auto s = sum_two_sided(term, log_bound, center, log_cut, policy.max_terms, keep_lo, keep_hi, "mu");
  const cplx value = pref * s.sum;
  const double err = apref * (s.tail + roundoff(s.abs_sum, s.terms)) +
                     std::abs(value) * (th.err_bound / std::abs(th.value)) * 1.01;
  return {value, err, s.terms + th.terms_used};
}

EvalResult r_corr(cplx u, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "r_corr");
  const cplx t = tau.value();
  const double y = tau.im;
  const double c = u.imag() / y;
  const double scale = std::sqrt(2.0 * kPi * y);  // 2 int_0^X e^{-pi t^2} dt = erf(sqrt(pi) X)

  auto term = [&](long m) -> cplx {
    const double nu = static_cast<double>(m) + 0.5;
    const double sg = nu > 0 ? 1.0 : -1.0;
    // sgn(nu) - erf(x) = sgn(nu) erfc(sgn(nu) x)
    const double ec = std::erfc(sg * scale * (nu + c));
    if (ec == 0.0) return 0.0;
    // e^{-pi i nu^2 tau} grows like e^{pi nu^2 y}; fold the erfc decay into the exponent
    cplx expo = -kPi * kI * nu * nu * t - 2.0 * kPi * kI * nu * u + std::log(ec);
    if (m % 2 != 0) expo += kPi * kI;
    return sg * std::exp(expo);
  };
  auto log_bound = [&](long m) {
    const double nu = static_cast<double>(m) + 0.5;
    const double sg = nu > 0 ? 1.0 : -1.0;
    const double x = sg * scale * (nu + c);
    const double log_exp = kPi * y * nu * nu + 2.0 * kPi * nu * u.imag();
    return (x >= 0.0 ? -x * x : std::log(2.0)) + log_exp;
  };
  const long center = std::lround(-c - 0.5);
  const long reach = static_cast<long>(std::ceil(std::abs(c))) + 1;
  const double log_cut = std::log(0.01 * policy.target_abs_err);
  const auto s = sum_two_sided(term, log_bound, center, log_cut, policy.max_terms, -reach - 1, reach, "r_corr");
  return {s.sum, s.tail + roundoff(s.abs_sum, s.terms) + 1e-15 * s.abs_sum, s.terms};
}

EvalResult mu_hat(cplx u, cplx v, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  const EvalResult m = mu(u, v, tau, policy);
  const EvalResult r = r_corr(u - v, tau, policy);
  return {m.value + 0.5 * kI * r.value, m.err_bound + 0.5 * r.err_bound, m.terms_used + r.terms_used};
}

EvalResult g_ab(CharPair ch, const UpperHalfPoint& tau, const TruncationPolicy& policy) {
  policy.validate();
  require_im(tau, policy, "g_ab");
  const cplx t = tau.value();
  const double y = tau.im;
  auto term = [&](long m) -> cplx {
    const double nu = ch.a + static_cast<double>(m);
    if (nu == 0.0) return 0.0;
    return nu * std::exp(kPi * kI * nu * nu * t + 2.0 * kPi * kI * nu * ch.b);
  };
  auto log_bound = [&](long m) {
    const double nu = ch.a + static_cast<double>(m);
    if (nu == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(nu)) - kPi * y * nu * nu;
  };
  const long center = std::lround(-ch.a);
  const double log_cut = std::log(0.01 * policy.target_abs_err);
  const auto s = sum_two_sided(term, log_bound, center, log_cut, policy.max_terms, center - 1, center + 1, "g_ab");
  return {s.sum, s.tail + roundoff(s.abs_sum, s.terms), s.terms};
}

namespace {

// Finds h/k with k <= 10^6 and exp(pi i h / k) == qhalf, via continued fractions of arg / pi.
bool recognise_root(cplx qhalf, std::int64_t& h, std::int64_t& k) {
  const double x = std::arg(qhalf) / kPi;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > 1'000'000) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < 1e-13) {
      h = p1;
      k = q1;
      return true;
    }
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return false;
}

void check_root_args(std::int64_t h, std::int64_t k) {
  if (k < 1 || std::gcd(h, k) != 1 || h % 2 == 0) {
    std::ostringstream os;
    os << "g2: root exp(pi i " << h << "/" << k << ") needs k >= 1, gcd(h,k) = 1 and h odd";
    throw Error(ErrorKind::kDivergentModulus, os.str());
  }
}

constexpr double kSingularGuard = 1e-10;

}  // namespace

EvalResult g2_at_root(cplx z, std::int64_t h, std::int64_t k) {
  check_root_args(h, k);
  // Q^j = e(h j / 2k), exact phase
  auto qpow = [&](std::int64_t j) { return e2pi(Rational(static_cast<__int128>(h) * j, 2 * static_cast<__int128>(k))); };
  const cplx zinv = 1.0 / z;
  cplx num = 1.0;  // (-Q;Q)_n Q^{n(n+1)/2}
  cplx den = 1.0;  // (z;Q)_{n+1} (z^{-1}Q;Q)_{n+1}
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (std::int64_t n = 0; n < k; ++n) {
    if (n > 0) num *= (1.0 + qpow(n)) * qpow(n);
    const cplx f1 = 1.0 - z * qpow(n);
    const cplx f2 = 1.0 - zinv * qpow(n + 1);
    if (std::abs(f1) < kSingularGuard || std::abs(f2) < kSingularGuard) {
      std::ostringstream os;
      os << "g2: denominator factor vanishes at j = " << n;
      throw Error(ErrorKind::kSingularDenominator, os.str());
    }
    den *= f1 * f2;
    const cplx term = num / den;
    sum += term;
    abs_sum += std::abs(term);
  }
  return {sum, kEps * static_cast<double>(4 * k + 8) * abs_sum, static_cast<long>(k)};
}

namespace {

// Terms of the terminating sum can exceed the result by many orders of
// magnitude; the sum is then redone in binary floating point with D digits.
template <unsigned D>
cplx g2_at_root_mp(const Rational& z_phase, std::int64_t h, std::int64_t k) {
  namespace bmp = boost::multiprecision;
  using F = bmp::number<bmp::cpp_bin_float<D>>;
  using Cx = bmp::number<bmp::complex_adaptor<bmp::cpp_bin_float<D>>>;
  const F two_pi = 2 * boost::math::constants::pi<F>();
  auto ephase = [&](const Rational& r) {
    const Rational f = r.frac();
    const F ang = two_pi * F(f.num()) / F(f.den());
    return Cx(cos(ang), sin(ang));
  };
  const Rational step(h, 2 * static_cast<__int128>(k));
  Cx num(1), den(1), sum(0);
  for (std::int64_t n = 0; n < k; ++n) {
    if (n > 0) {
      const Cx qn = ephase(Rational(n) * step);
      num *= (Cx(1) + qn) * qn;
    }
    den *= (Cx(1) - ephase(z_phase + Rational(n) * step)) * (Cx(1) - ephase(Rational(n + 1) * step - z_phase));
    sum += num / den;
  }
  return {sum.real().template convert_to<double>(), sum.imag().template convert_to<double>()};
}

}  // namespace

EvalResult g2_at_root(const Rational& z_phase, std::int64_t h, std::int64_t k) {
  check_root_args(h, k);
  const Rational step(h, 2 * static_cast<__int128>(k));
  auto qpow = [&](std::int64_t j) { return Rational(j) * step; };
  cplx num = 1.0;
  cplx den = 1.0;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  double log_num = 0.0, log_den = 0.0, log_max = 0.0;  // natural logs of |num|, |den|, max |term|
  for (std::int64_t n = 0; n < k; ++n) {
    if (n > 0) {
      const cplx f = (1.0 + e2pi(qpow(n))) * e2pi(qpow(n));
      num *= f;
      log_num += std::log(std::abs(f));
    }
    const Rational p1 = z_phase + qpow(n);
    const Rational p2 = qpow(n + 1) - z_phase;
    if (p1.frac() == Rational(0) || p2.frac() == Rational(0)) {
      std::ostringstream os;
      os << "g2: denominator factor vanishes exactly at j = " << n;
      throw Error(ErrorKind::kSingularDenominator, os.str());
    }
    const cplx f1 = one_minus_e2pi(p1);
    const cplx f2 = one_minus_e2pi(p2);
    den *= f1 * f2;
    log_den += std::log(std::abs(f1)) + std::log(std::abs(f2));
    log_max = std::max(log_max, log_num - log_den);
    const cplx term = num / den;
    sum += term;
    abs_sum += std::abs(term);
  }
  // decimal digits lost to cancellation, relative to an O(1) result
  const double lost = (log_max + std::log(static_cast<double>(k))) / std::log(10.0);
  if (lost < 2.5 && std::isfinite(abs_sum)) {
    return {sum, kEps * static_cast<double>(4 * k + 8) * abs_sum, static_cast<long>(k)};
  }
  const double need = lost + 20.0;
  cplx v;
  double digits;
  if (need <= 50) {
    v = g2_at_root_mp<50>(z_phase, h, k), digits = 50;
  } else if (need <= 100) {
    v = g2_at_root_mp<100>(z_phase, h, k), digits = 100;
  } else if (need <= 200) {
    v = g2_at_root_mp<200>(z_phase, h, k), digits = 200;
  } else if (need <= 400) {
    v = g2_at_root_mp<400>(z_phase, h, k), digits = 400;
  } else {
    v = g2_at_root_mp<800>(z_phase, h, k), digits = 800;
  }
  const double err = std::pow(10.0, lost + 2.0 - digits) + kEps * std::abs(v);
  return {v, err, static_cast<long>(k)};
}

EvalResult g2(cplx z, cplx qhalf, const TruncationPolicy& policy) {
  policy.validate();
  const double aq = std::abs(qhalf);
  if (aq > 1.0 + 1e-12) throw Error(ErrorKind::kDivergentModulus, "g2: |q| > 1");
  if (aq >= 1.0 - 1e-12) {
    std::int64_t h = 0, k = 0;
    if (!recognise_root(qhalf, h, k)) {
      throw Error(ErrorKind::kDivergentModulus, "g2: |q| = 1 but q is not a recognisable root of unity");
    }
    return g2_at_root(z, h, k);
  }
  if (z == 0.0) throw Error(ErrorKind::kSingularDenominator, "g2: z = 0");
  const cplx zinv = 1.0 / z;
  const double az = std::abs(z);
  cplx qn = 1.0;  // Q^n
  cplx num = 1.0;
  cplx den = 1.0;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  long n = 0;
  for (;; ++n) {
    if (n > 0) {
      qn *= qhalf;
      num *= (1.0 + qn) * qn;
    }
    const cplx f1 = 1.0 - z * qn;
    const cplx f2 = 1.0 - zinv * qn * qhalf;
    if (std::abs(f1) < kSingularGuard || std::abs(f2) < kSingularGuard) {
      throw Error(ErrorKind::kSingularDenominator, "g2: denominator factor vanishes");
    }
    den *= f1 * f2;
    const cplx term = num / den;
    sum += term;
    abs_sum += std::abs(term);
    // |t_{m+1} / t_m| <= rho_m, decreasing in m once the factors are small
    const double aqn1 = std::pow(aq, static_cast<double>(n + 1));
    const double d1 = 1.0 - az * aqn1;
    const double d2 = 1.0 - aqn1 * aq / az;
    if (d1 > 0.5 && d2 > 0.5) {
      const double rho = (1.0 + aqn1) * aqn1 / (d1 * d2);
      if (rho < 0.5) {
        const double tail = std::abs(term) * rho / (1.0 - rho);
        if (tail < 0.01 * policy.target_abs_err) {
          return {sum, tail + roundoff(abs_sum, n + 1), n + 1};
        }
      }
    }
    if (n > policy.max_terms) throw Error(ErrorKind::kQuadratureFailure, "g2: series did not converge");
  }
}

EvalResult pochhammer(cplx x, cplx q, std::optional<long> n, const TruncationPolicy& policy) {
  policy.validate();
  if (n) {
    if (*n < 0) throw Error(ErrorKind::kInvalidArgument, "pochhammer: negative length");
    cplx prod = 1.0;
    cplx xq = x;
    for (long j = 0; j < *n; ++j, xq *= q) prod *= 1.0 - xq;
    return {prod, 4.0 * kEps * std::abs(prod) * static_cast<double>(*n + 1), *n};
  }
  const double aq = std::abs(q);
  if (aq >= 1.0) throw Error(ErrorKind::kDivergentModulus, "pochhammer: infinite product needs |q| < 1");
  const double ax = std::abs(x);
  cplx prod = 1.0;
  cplx xq = x;
  double axq = ax;
  long j = 0;
  for (; axq / (1.0 - aq) >= 0.01 * policy.target_abs_err || axq >= 0.5; ++j, xq *= q, axq *= aq) {
    prod *= 1.0 - xq;
    if (j > policy.max_terms) throw Error(ErrorKind::kQuadratureFailure, "pochhammer: product did not converge");
  }
  const double mag = std::abs(prod);
  return {prod, mag * product_tail_rel(axq / (1.0 - aq), axq) + 4.0 * kEps * mag * static_cast<double>(j + 1), j};
}

}  // namespace mockq
