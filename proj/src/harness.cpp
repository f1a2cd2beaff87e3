#include "mockq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mockq/modgroup.hpp"
#include "mockq/mordell.hpp"
#include "mockq/qseries.hpp"
#include "mockq/quantum_sets.hpp"
#include "mockq/valpha.hpp"

namespace mockq {

namespace {

using nlohmann::ordered_json;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng);
  }
  std::uint64_t next() { return eng(); }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + (std::signbit(z.imag()) ? "" : "+") + fmt(z.imag()) + "i"; }

UpperHalfPoint rand_tau(Rng& rng, double im_lo = 0.5, double im_hi = 2.0, double re_span = 0.5) {
  return {rng.uniform(-re_span, re_span), rng.uniform(im_lo, im_hi)};
}

// s tau + t with lattice coordinates in (lo, hi)
cplx rand_lattice_safe(Rng& rng, const UpperHalfPoint& tau, double lo = 0.05, double hi = 0.95) {
  return rng.uniform(lo, hi) * tau.value() + rng.uniform(lo, hi);
}

struct Ctx {
  IdentityReport& rep;
  Rng& rng;
  long cases;
  TruncationPolicy policy;
};

// Runs one case; library errors become failure rows instead of aborting the suite.
void run_case(Ctx& c, const std::string& inputs, const std::function<double()>& body) {
  ++c.rep.cases;
  try {
    c.rep.record(body(), inputs);
  } catch (const Error& e) {
    c.rep.record_error(inputs, e.what());
  }
}

double max_of(std::initializer_list<double> xs) { return *std::max_element(xs.begin(), xs.end()); }

// Picks tau with Im(tau) = Im(g tau) = sin(theta) / |z| for theta in [pi/3, 2pi/3].
UpperHalfPoint tau_for(const IntMatrix2& g, Rng& rng) {
  if (g.z() == 0) return rand_tau(rng, 0.5, 1.5);
  cplx s = std::polar(1.0, rng.uniform(kPi / 3.0, 2.0 * kPi / 3.0));
  if (g.z() < 0) s = std::conj(s);
  return UpperHalfPoint((s - static_cast<double>(g.w())) / static_cast<double>(g.z()));
}

// ---------------------------------------------------------------- q-series

void suite_mu_elliptic(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx u = rand_lattice_safe(c.rng, tau), v = rand_lattice_safe(c.rng, tau);
    run_case(c, "tau=" + fmt(tau.value()) + " u=" + fmt(u) + " v=" + fmt(v), [&] {
      const cplx m = mu(u, v, tau, c.policy).value;
      return max_of({std::abs(mu(u + 1.0, v, tau, c.policy).value + m),
                     std::abs(mu(u, v + 1.0, tau, c.policy).value + m),
                     std::abs(mu(-u, -v, tau, c.policy).value - m)});
    });
  }
}

void suite_mu_modular(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx u = rand_lattice_safe(c.rng, tau), v = rand_lattice_safe(c.rng, tau);
    run_case(c, "tau=" + fmt(tau.value()) + " u=" + fmt(u) + " v=" + fmt(v), [&] {
      const cplx t = tau.value();
      const cplx m = mu(u, v, tau, c.policy).value;
      const double r_t = std::abs(mu(u, v, UpperHalfPoint(tau.re + 1.0, tau.im), c.policy).value - e2pi(-0.125) * m);
      const cplx inv = std::exp(kPi * kI * (u - v) * (u - v) / t) / principal_sqrt(-kI * t) *
                       mu(u / t, v / t, UpperHalfPoint(-1.0 / t), c.policy).value;
      const cplx h = mordell_h(u - v, tau, MordellMethod::kQuadrature, c.policy).value;
      return std::max(r_t, std::abs(inv + m - h / (2.0 * kI)));
    });
  }
}

void suite_theta(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx z = c.rng.uniform(-1.0, 1.0) * tau.value() + c.rng.uniform(-1.0, 1.0);
    run_case(c, "tau=" + fmt(tau.value()) + " z=" + fmt(z), [&] {
      return std::abs(theta(z, tau, ThetaMode::kSum, c.policy).value -
                      theta(z, tau, ThetaMode::kProduct, c.policy).value);
    });
  }
}

void suite_gab(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const double a = c.rng.uniform(-1.0, 1.0), b = c.rng.uniform(-1.0, 1.0);
    run_case(c, "tau=" + fmt(tau.value()) + " a=" + fmt(a) + " b=" + fmt(b), [&] {
      const cplx t = tau.value();
      auto g = [&](double x, double y, cplx at) { return g_ab({x, y}, UpperHalfPoint(at), c.policy).value; };
      const cplx base = g(a, b, t);
      const double l1 = std::abs(g(a + 1.0, b, t) - base);
      const double l2 = std::abs(g(a, b + 1.0, t) - e2pi(a) * base);
      const double l3 = std::abs(g(-a, -b, t) + base);
      const double l4 = std::abs(g(a, b, t + 1.0) - std::exp(-kPi * kI * a * (a + 1.0)) * g(a, a + b + 0.5, t));
      const double l5 =
          std::abs(g(a, b, -1.0 / t) - kI * e2pi(a * b) * principal_pow32(-kI * t) * g(b, -a, t));
      return max_of({l1, l2, l3, l4, l5});
    });
  }
}

void suite_eta_cube(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    run_case(c, "tau=" + fmt(tau.value()), [&] {
      const cplx e = eta(tau, c.policy).value;
      return std::abs(g_ab({0.5, 0.5}, tau, c.policy).value - kI * e * e * e);
    });
  }
}

void suite_kang(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx al = c.rng.uniform(0.05, 0.45) * tau.value() + c.rng.uniform(0.0, 1.0);
    run_case(c, "tau=" + fmt(tau.value()) + " alpha=" + fmt(al), [&] {
      const cplx t = tau.value();
      const cplx lhs = mu(2.0 * al, 0.5 * t, tau, c.policy).value;
      const cplx g = g2(e2pi(al), e2pi(0.5 * t), c.policy).value;
      const cplx e1 = eta(tau, c.policy).value;
      const cplx eh = eta(UpperHalfPoint(0.5 * t), c.policy).value;
      const cplx th = theta(2.0 * al, tau, ThetaMode::kSum, c.policy).value;
      const cplx q8 = e2pi(t / 8.0);
      return std::abs(lhs - kI * q8 * g + e2pi(-al) * q8 * std::pow(e1, 4) / (eh * eh * th));
    });
  }
}

// ---------------------------------------------------------------- Mordell and periods

void suite_h_props(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx z = c.rng.uniform(-0.5, 0.5) * tau.value() + c.rng.uniform(-0.5, 0.5);
    run_case(c, "tau=" + fmt(tau.value()) + " z=" + fmt(z), [&] {
      const cplx t = tau.value();
      auto h = [&](cplx w) { return mordell_h(w, tau, MordellMethod::kQuadrature, c.policy).value; };
      const cplx hz = h(z);
      const cplx sq = principal_sqrt(-kI * t);
      const double l1 = std::abs(hz + h(z + 1.0) - 2.0 / sq * std::exp(kPi * kI * (z + 0.5) * (z + 0.5) / t));
      const double l2 = std::abs(hz + std::exp(-2.0 * kPi * kI * z - kPi * kI * t) * h(z + t) -
                                 2.0 * std::exp(-kPi * kI * z - kPi * kI * t / 4.0));
      const double l3 = std::abs(h(-z) - hz);
      const double half = std::abs(h(0.5) - 1.0 / sq);
      return max_of({l1, l2, l3, half});
    });
  }
}

void suite_h_cross(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng);
    const cplx z = c.rng.uniform(-0.45, 0.45) * tau.value() + c.rng.uniform(-1.0, 1.0);
    run_case(c, "tau=" + fmt(tau.value()) + " u=" + fmt(z), [&] {
      return std::abs(mordell_h(z, tau, MordellMethod::kQuadrature, c.policy).value -
                      mordell_h(z, tau, MordellMethod::kMuIdentity, c.policy).value);
    });
  }
}

void suite_z116(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng, 0.5, 1.5);
    const double a = c.rng.uniform(-0.45, 0.45), b = c.rng.uniform(-0.45, 0.45);
    const double b1 = c.rng.uniform(-1.5, 1.5);
    run_case(c, "tau=" + fmt(tau.value()) + " a=" + fmt(a) + " b=" + fmt(b) + " b1=" + fmt(b1), [&] {
      const cplx t = tau.value();
      // (1), any real b
      const cplx p1 = period_integral({a + 0.5, b1 + 0.5}, PathSpec::from_minus_conj_tau(), t, c.policy).value;
      const cplx r1 = -e2pi(a * (b1 + 0.5)) * e2pi(-0.5 * a * a * t) * r_corr(a * t - b1, tau, c.policy).value;
      // (2), a and b in (-1/2, 1/2)
      const cplx p2 = period_integral({a + 0.5, b + 0.5}, PathSpec::from_point(0.0), t, c.policy).value;
      const cplx r2 = -e2pi(a * (b + 0.5)) * e2pi(-0.5 * a * a * t) *
                      mordell_h(a * t - b, tau, MordellMethod::kQuadrature, c.policy).value;
      return std::max(std::abs(p1 - r1), std::abs(p2 - r2));
    });
  }
}

double away_from_zero(Rng& rng) {
  const double v = rng.uniform(0.05, 0.45);
  return rng.integer(0, 1) == 0 ? v : -v;
}

void suite_zlem_ext(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const UpperHalfPoint tau = rand_tau(c.rng, 0.5, 1.5);
    const double a = away_from_zero(c.rng), b = away_from_zero(c.rng);
    run_case(c, "tau=" + fmt(tau.value()) + " a=" + fmt(a) + " b=" + fmt(b), [&] {
      const cplx t = tau.value();
      const cplx pre = -kI * e2pi(-t / 8.0 + b / 2.0);
      const cplx p1 = period_integral({1.0, b + 0.5}, PathSpec::from_minus_conj_tau(), t, c.policy).value;
      const cplx r1 = pre * r_corr(0.5 * t - b, tau, c.policy).value + kI;
      const cplx p2 = period_integral({1.0, b + 0.5}, PathSpec::from_point(0.0), t, c.policy).value;
      const cplx r2 = pre * mordell_h(0.5 * t - b, tau, MordellMethod::kQuadrature, c.policy).value + kI;
      const cplx p3 = period_integral({a + 0.5, 1.0}, PathSpec::from_point(0.0), t, c.policy).value;
      const cplx r3 = -e2pi(-0.5 * a * a * t + a) * mordell_h(a * t - 0.5, tau, MordellMethod::kQuadrature, c.policy).value +
                      e2pi(a) / principal_sqrt(-kI * t);
      return max_of({std::abs(p1 - r1), std::abs(p2 - r2), std::abs(p3 - r3)});
    });
  }
}

void suite_delta_vanish(Ctx& c) {
  for (const cplx t : {cplx(0.0, 1.0), cplx(0.3, 0.9)}) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double x = -0.45 + 0.225 * i, y = -0.45 + 0.225 * j;
        run_case(c, "tau=" + fmt(t) + " x=" + fmt(x) + " y=" + fmt(y),
                 [&] { return std::abs(delta(x, y, UpperHalfPoint(t), c.policy).value); });
      }
    }
  }
}

void suite_delta_shifts(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    double x = 0.3, y = 0.1;
    UpperHalfPoint tau(0.0, 1.5);
    if (i > 0) {
      x = c.rng.uniform(-0.45, 0.45);
      y = c.rng.uniform(-0.45, 0.45);
      tau = rand_tau(c.rng, 0.6, 1.5);
    }
    run_case(c, "tau=" + fmt(tau.value()) + " x=" + fmt(x) + " y=" + fmt(y), [&] {
      const cplx t = tau.value();
      const cplx d = delta(x, y, tau, c.policy).value;
      const cplx dy = delta(x, y + 1.0, tau, c.policy).value;
      const cplx dx = delta(x + 1.0, y, tau, c.policy).value;
      const double sy = std::abs(dy + e2pi(x) * d -
                                 2.0 * e2pi(x) / principal_sqrt(-kI * t) * std::exp(kPi * kI * (y + 0.5) * (y + 0.5) / t));
      const double sx =
          std::abs(dx - d + 2.0 * std::exp(kPi * kI * (x + y)) * e2pi(x * y) * e2pi(-0.5 * (x + 0.5) * (x + 0.5) * t));
      return std::max(sx, sy);
    });
  }
}

// ---------------------------------------------------------------- modular group

const std::vector<std::vector<AlphaParams>>& mock_classes() {
  static const std::vector<std::vector<AlphaParams>> classes = {
      {AlphaParams(1, 3, 0), AlphaParams(2, 5, 2)},  {AlphaParams(1, 3, 1), AlphaParams(2, 5, 3)},
      {AlphaParams(1, 6, 0), AlphaParams(1, 2, 2)},  {AlphaParams(1, 6, 1), AlphaParams(5, 6, 3)},
      {AlphaParams(1, 4, 0), AlphaParams(5, 12, 2)}, {AlphaParams(1, 4, 1), AlphaParams(3, 8, 1), AlphaParams(5, 12, 3)}};
  return classes;
}

void suite_mock_transform(Ctx& c) {
  const auto& classes = mock_classes();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    long composite = 0;
    for (long i = 0; i < c.cases; ++i) {
      const AlphaParams& al = classes[k][i % classes[k].size()];
      const IntMatrix2 g = sample_element(GroupSpec::a_alpha(al), c.rng.next(), {0, 8});
      if (aalpha_branch(al, g) == AalphaBranch::kComposite) ++composite;
      const UpperHalfPoint tau = tau_for(g, c.rng);
      run_case(c, "alpha=" + al.str() + " gamma=" + g.str() + " tau=" + fmt(tau.value()),
               [&] { return mock_transform_residual(al, g, tau, c.policy); });
    }
    if (k + 1 == classes.size() && c.cases >= 25 && composite < 5) {
      c.rep.failures.push_back({"composite-branch draws=" + std::to_string(composite) + " (need >= 5)", 0.0});
    }
  }
}

void suite_phi(Ctx& c) {
  for (const auto& cls : mock_classes()) {
    for (long i = 0; i < c.cases; ++i) {
      const AlphaParams& al = cls[i % cls.size()];
      const std::int64_t n = std::lcm<std::int64_t>(2, al.C());
      const IntMatrix2 g = sample_element(GroupSpec::a_alpha(al), c.rng.next(), {3 * n, 8});
      run_case(c, "alpha=" + al.str() + " gamma=" + g.str(), [&] {
        const cplx closed = phi_multiplier(al, g);
        double r = std::abs(std::abs(closed) - 1.0);
        for (const cplx t : {cplx(0.0, 1.0), cplx(0.3, 0.7)}) {
          r = std::max(r, std::abs(closed - phi_multiplier_via_tau(al, g, t)));
        }
        return r;
      });
    }
  }
}

void suite_psi_eta(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const IntMatrix2 g = sample_element(GroupSpec::gamma0(1), c.rng.next(), {30, 8});
    const UpperHalfPoint tau = tau_for(g, c.rng);
    run_case(c, "gamma=" + g.str() + " tau=" + fmt(tau.value()), [&] {
      const cplx lhs = eta(UpperHalfPoint(g.apply(tau.value())), c.policy).value;
      const cplx rhs = e2pi(eta_psi(g)) * principal_sqrt(g.cocycle(tau.value())) * eta(tau, c.policy).value;
      return std::abs(lhs - rhs);
    });
  }
}

void suite_group_closure(Ctx& c) {
  for (const std::int64_t cc : {4, 8, 12}) {
    const AlphaParams al(1, cc, 1);
    const GroupSpec spec = GroupSpec::a_alpha(al);
    for (long i = 0; i < c.cases; ++i) {
      const IntMatrix2 g = sample_element(spec, c.rng.next());
      const IntMatrix2 h = sample_element(spec, c.rng.next());
      run_case(c, "alpha=" + al.str() + " g=" + g.str() + " h=" + h.str(), [&] {
        const IntMatrix2 p = g * h;
        const AalphaBranch bg = aalpha_branch(al, g), bh = aalpha_branch(al, h), bp = aalpha_branch(al, p);
        const AalphaBranch expect = (bg == bh) ? AalphaBranch::kMain : AalphaBranch::kComposite;
        const bool ok = bp == expect && group_member(spec, g.inverse()) &&
                        aalpha_branch(al, g.inverse()) == bg && aalpha_member_by_sets(al, p);
        return ok ? 0.0 : 1.0;
      });
    }
    // iff-completeness of the tilde decomposition on random SL2(Z) matrices
    long non_members = 0;
    for (long tries = 0; non_members < c.cases && tries < 100 * c.cases; ++tries) {
      const IntMatrix2 m = sample_element(GroupSpec::gamma0(1), c.rng.next(), {100, 0});
      const bool member = group_member(spec, m);
      if (!member) ++non_members;
      run_case(c, "alpha=" + al.str() + " m=" + m.str(), [&] {
        bool tilde_ok = true;
        try {
          tilde_decompose(al, m);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kNotInGroup) throw;
          tilde_ok = false;
        }
        return (tilde_ok == member && aalpha_member_by_sets(al, m) == member) ? 0.0 : 1.0;
      });
    }
  }
}

// ---------------------------------------------------------------- quantum

const std::vector<AlphaParams>& quantum_alphas() {
  static const std::vector<AlphaParams> alphas = {AlphaParams(1, 3, 0), AlphaParams(2, 3, 0), AlphaParams(1, 3, 1),
                                                  AlphaParams(1, 4, 1), AlphaParams(1, 5, 2), AlphaParams(2, 5, 3)};
  return alphas;
}

std::optional<RationalPoint> draw_point(Rng& rng, const AlphaParams& al, std::int64_t hmax, std::int64_t kmax) {
  const SetSpec spec = SetSpec::salpha(al);
  for (int tries = 0; tries < 100000; ++tries) {
    const std::int64_t h = rng.integer(-hmax, hmax), k = rng.integer(1, kmax);
    if (set_member_raw(spec, h, k)) return RationalPoint(h, k);
  }
  return std::nullopt;
}

void suite_quantum_m(Ctx& c) {
  const auto& alphas = quantum_alphas();
  for (const AlphaParams& al : alphas) {
    const int r = al.a_odd() ? 2 : 1;
    const MForm part = al.a_odd() ? MForm::kPart2 : MForm::kPart1;
    const SetSpec spec = SetSpec::salpha(al);
    for (long i = 0; i < c.cases;) {
      const auto p = draw_point(c.rng, al, 40, 30);
      if (!p) break;
      std::int64_t h2, k2;
      if (!act_on_rational(1, 0, r, 1, p->h, p->k, h2, k2) || !set_member_raw(spec, h2, k2)) continue;
      if (std::abs(p->to_double() + 1.0 / r) < 0.01) continue;
      ++i;
      run_case(c, "alpha=" + al.str() + " r=" + std::to_string(r) + " tau=" + p->str(), [&] {
        return std::max(qm_residual_m(al, r, *p, part, c.policy), qm_residual_m(al, r, *p, MForm::kGeneral, c.policy));
      });
    }
  }
  // 20 points in H, spread over the configurations
  for (long i = 0; i < 20; ++i) {
    const AlphaParams& al = alphas[i % alphas.size()];
    const int r = al.a_odd() ? 2 : 1;
    UpperHalfPoint tau;
    do {
      tau = rand_tau(c.rng, 0.4, 1.5, 1.0);
    } while ((tau.value() / (static_cast<double>(r) * tau.value() + 1.0)).imag() < 0.3);
    run_case(c, "alpha=" + al.str() + " r=" + std::to_string(r) + " tau=" + fmt(tau.value()), [&] {
      const MForm part = al.a_odd() ? MForm::kPart2 : MForm::kPart1;
      return std::max(qm_residual_m(al, r, tau, part, c.policy), qm_residual_m(al, r, tau, MForm::kGeneral, c.policy));
    });
  }
}

void suite_quantum_t(Ctx& c) {
  const std::vector<std::vector<AlphaParams>> classes = {
      {AlphaParams(1, 3, 0), AlphaParams(1, 3, 1), AlphaParams(2, 5, 3)},
      {AlphaParams(1, 4, 1), AlphaParams(1, 4, 0), AlphaParams(1, 6, 1)}};
  for (const auto& cls : classes) {
    for (long i = 0; i < c.cases; ++i) {
      const AlphaParams& al = cls[i % cls.size()];
      const std::int64_t r = al.C() % 2 == 0 ? al.C() : 2 * al.C();
      const auto p = draw_point(c.rng, al, 300, 200);
      if (!p) continue;
      run_case(c, "alpha=" + al.str() + " r=" + std::to_string(r) + " tau=" + p->str(), [&] {
        return std::max(qm_residual_t(al, r, *p, TForm::kProposition, c.policy),
                        qm_residual_t(al, r, *p, TForm::kPart3, c.policy));
      });
    }
  }
}

void suite_lemma_ij(Ctx& c) {
  const auto& alphas = quantum_alphas();
  for (long i = 0; i < c.cases; ++i) {
    const AlphaParams& al = alphas[i % alphas.size()];
    const int r = al.a_odd() ? 2 : 1;
    const UpperHalfPoint tau = rand_tau(c.rng, 0.6, 1.5);
    run_case(c, "alpha=" + al.str() + " r=" + std::to_string(r) + " tau=" + fmt(tau.value()), [&] {
      return std::abs(m_mordell_terms(al, r, tau, c.policy).value - m_period_term(al, r, tau.value(), c.policy).value);
    });
  }
}

void suite_set_closure(Ctx& c) {
  std::vector<AlphaParams> alphas = quantum_alphas();
  alphas.emplace_back(1, 2, 1);
  for (const AlphaParams& al : alphas) {
    const IdentityReport sub = closure_check(al, c.cases, c.rng.next());
    c.rep.cases += sub.cases;
    for (const auto& f : sub.failures) c.rep.record(f.residual, f.inputs);
    c.rep.max_residual = std::max(c.rep.max_residual, sub.max_residual);
    // words of length <= 4
    const auto gens = galpha_generators(al);
    const SetSpec spec = SetSpec::salpha(al);
    for (long i = 0; i < c.cases / 4; ++i) {
      const auto p = draw_point(c.rng, al, 1000, 1000);
      if (!p) break;
      std::vector<std::pair<int, std::int64_t>> word;
      const long len = c.rng.integer(1, 4);
      for (long j = 0; j < len; ++j) word.emplace_back(static_cast<int>(c.rng.integer(0, 1)), c.rng.integer(0, 1) ? 1 : -1);
      const IntMatrix2 m = word_to_matrix(gens, word);
      std::ostringstream in;
      in << "alpha=" << al.str() << " point=" << p->str() << " word=" << m;
      run_case(c, in.str(), [&] {
        std::int64_t h2, k2;
        if (!act_on_rational(m.x(), m.y(), m.z(), m.w(), p->h, p->k, h2, k2)) return 0.0;
        return set_member_raw(spec, h2, k2) ? 0.0 : 1.0;
      });
    }
  }
}

void suite_laplacian(Ctx& c) {
  const std::vector<AlphaParams> alphas = {AlphaParams(1, 4, 1), AlphaParams(1, 4, 0), AlphaParams(1, 3, 1),
                                           AlphaParams(1, 3, 0)};
  for (const AlphaParams& al : alphas) {
    for (const double re : {-0.25, 0.0, 0.25}) {
      for (const double im : {0.8, 1.0, 1.25}) {
        const UpperHalfPoint tau(re, im);
        run_case(c, "alpha=" + al.str() + " tau=" + fmt(tau.value()),
                 [&] { return laplacian_residual(al, tau, 1e-3, c.policy); });
      }
    }
    // sensitivity control on the holomorphic part alone
    const UpperHalfPoint tau(0.0, 1.0);
    ++c.rep.cases;
    try {
      const double control = laplacian_residual(al, tau, 1e-3, c.policy, LaplacianTarget::kHolomorphic);
      if (!(control > 1e-2)) {
        c.rep.failures.push_back(
            {"alpha=" + al.str() + " tau=" + fmt(tau.value()) + " control=holomorphic expected>1e-2", control});
      }
    } catch (const Error& e) {
      c.rep.record_error("alpha=" + al.str() + " control", e.what());
    }
  }
}

void suite_branch(Ctx& c) {
  for (long i = 0; i < c.cases; ++i) {
    const int r = static_cast<int>(c.rng.integer(1, 2));
    const cplx t(c.rng.uniform(-3.0, 3.0), c.rng.uniform(0.01, 3.0));
    run_case(c, "r=" + std::to_string(r) + " tau=" + fmt(t), [&] { return branch_residual(r, t); });
  }
}

struct SuiteDef {
  void (*fn)(Ctx&);
  long cases;
  double tol;
};

const std::map<std::string, SuiteDef>& registry() {
  static const std::map<std::string, SuiteDef> reg = {
      {"mu-elliptic", {suite_mu_elliptic, 100, 1e-9}},
      {"mu-modular", {suite_mu_modular, 100, 1e-9}},
      {"theta-consistency", {suite_theta, 100, 1e-11}},
      {"h-props", {suite_h_props, 20, 1e-8}},
      {"h-cross", {suite_h_cross, 50, 1e-8}},
      {"gab-props", {suite_gab, 100, 1e-9}},
      {"eta-cube", {suite_eta_cube, 20, 1e-10}},
      {"z116", {suite_z116, 20, 1e-6}},
      {"zlem-ext", {suite_zlem_ext, 20, 1e-6}},
      {"kang", {suite_kang, 50, 1e-8}},
      {"mock-transform", {suite_mock_transform, 25, 1e-8}},
      {"phi-consistency", {suite_phi, 10, 1e-10}},
      {"laplacian", {suite_laplacian, 1, 1e-4}},
      {"delta-vanish", {suite_delta_vanish, 50, 1e-6}},
      {"delta-shifts", {suite_delta_shifts, 10, 1e-6}},
      {"quantum-m", {suite_quantum_m, 10, 1e-7}},
      {"quantum-t", {suite_quantum_t, 50, 1e-10}},
      {"lemma-IJ", {suite_lemma_ij, 20, 1e-6}},
      {"group-closure", {suite_group_closure, 1000, 0.0}},
      {"set-closure", {suite_set_closure, 200, 0.0}},
      {"psi-eta", {suite_psi_eta, 100, 1e-10}},
      {"branch-consistency", {suite_branch, 100, 1e-12}},
  };
  return reg;
}

const SuiteDef& lookup(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw Error(ErrorKind::kUnknownSuite, "no suite named '" + name + "'");
  return it->second;
}

ordered_json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, def] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

double default_tolerance(const std::string& suite) { return lookup(suite).tol; }
long default_cases(const std::string& suite) { return lookup(suite).cases; }

IdentityReport run_suite(const std::string& name, long cases, std::uint64_t seed, double tol) {
  const SuiteDef& def = lookup(name);
  const auto start = std::chrono::steady_clock::now();
  IdentityReport rep;
  rep.suite = name;
  rep.seed = seed;
  rep.tolerance = tol;
  Rng rng(seed);
  Ctx ctx{rep, rng, cases > 0 ? cases : def.cases, TruncationPolicy{}};
  def.fn(ctx);
  rep.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string render_report(const IdentityReport& r, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "suite,seed,inputs,residual\n";
    for (const auto& f : r.failures) {
      out += r.suite + "," + std::to_string(r.seed) + "," + csv_quote(f.inputs) + "," + fmt(f.residual) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["tolerance"] = r.tolerance;
  j["max_residual"] = number_or_string(r.max_residual);
  j["failures"] = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json fj;
    fj["inputs"] = f.inputs;
    fj["residual"] = number_or_string(f.residual);
    j["failures"].push_back(fj);
  }
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump(2) + "\n";
}

IdentityReport parse_report_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  IdentityReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.cases = j.at("cases").get<long>();
  r.tolerance = read_number(j.at("tolerance"));
  r.max_residual = read_number(j.at("max_residual"));
  for (const auto& f : j.at("failures")) r.failures.push_back({f.at("inputs").get<std::string>(), read_number(f.at("residual"))});
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  return r;
}

std::vector<ScanRow> scan_cocycle(const AlphaParams& al, int part, double x_from, double x_to, long steps,
                                  const TruncationPolicy& policy) {
  if (part != 1 && part != 2) throw Error(ErrorKind::kInvalidArgument, "scan: part must be 1 or 2");
  if (steps < 2) throw Error(ErrorKind::kInvalidArgument, "scan: need at least 2 steps");
  const double ac = al.ratio().to_double();
  const CharPair ch{ac, part == 1 ? 0.5 : 0.0};
  const cplx pre = part == 1 ? -0.5 * kI * e2pi(Rational(-al.A(), 2 * al.C())) : -0.5 * kI;
  const PathSpec path = PathSpec::from_point(part == 1 ? 1.0 : 0.5);
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    const double x = x_from + (x_to - x_from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    ScanRow row{x, std::nullopt};
    try {
      row.value = pre * period_integral(ch, path, cplx(x, 0.0), policy).value;
    } catch (const Error&) {
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "x,re,im,abs\n";
  for (const auto& r : rows) {
    out += fmt(r.x);
    if (r.value) {
      out += "," + fmt(r.value->real()) + "," + fmt(r.value->imag()) + "," + fmt(std::abs(*r.value)) + "\n";
    } else {
      out += ",null,null,null\n";
    }
  }
  return out;
}

std::string scan_to_svg(const std::vector<ScanRow>& rows) {
  constexpr double kW = 800, kH = 400, kPad = 40;
  double x_lo = 0, x_hi = 1, y_hi = 0;
  if (!rows.empty()) {
    x_lo = rows.front().x;
    x_hi = rows.back().x;
  }
  for (const auto& r : rows) {
    if (r.value) y_hi = std::max(y_hi, std::abs(*r.value));
  }
  if (y_hi <= 0) y_hi = 1;
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  auto px = [&](double x) { return kPad + (x - x_lo) / (x_hi - x_lo) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - y / y_hi * (kH - 2 * kPad); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\"" << kH - kPad
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kH - kPad
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kPad << "\" y=\"" << kH - 10 << "\" font-size=\"12\">x = " << fmt(x_lo) << " .. "
     << fmt(x_hi) << ", max |value| = " << fmt(y_hi) << "</text>\n";
  std::string pts;
  auto flush = [&] {
    if (!pts.empty()) os << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"" << pts << "\"/>\n";
    pts.clear();
  };
  for (const auto& r : rows) {
    if (!r.value) {
      flush();
      continue;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.x), py(std::abs(*r.value)));
    pts += buf;
  }
  flush();
  os << "</svg>\n";
  return os.str();
}

}  // namespace mockq
