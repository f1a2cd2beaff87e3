#include <doctest.h>

#include "mockq/mordell.hpp"
#include "mockq/qseries.hpp"

using namespace mockq;

TEST_CASE("h evenness and the value at 1/2") {
  const UpperHalfPoint i(0.0, 1.0);
  const cplx z(0.3, 0.2);
  CHECK(std::abs(mordell_h(-z, i).value - mordell_h(z, i).value) < 1e-12);
  for (const UpperHalfPoint t : {UpperHalfPoint(0.0, 0.7), UpperHalfPoint(0.4, 1.1)}) {
    CHECK(std::abs(mordell_h(0.5, t).value - 1.0 / principal_sqrt(-kI * t.value())) < 1e-9);
  }
}

TEST_CASE("h: quadrature agrees with the mu identity") {
  const UpperHalfPoint t(0.0, 1.3);
  const cplx u = 0.23 * t.value() - 0.31;
  const cplx a = mordell_h(u, t, MordellMethod::kQuadrature).value;
  const cplx b = mordell_h(u, t, MordellMethod::kMuIdentity).value;
  CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("h far from the real axis in Re u") {
  const UpperHalfPoint t(0.1, 0.9);
  const cplx u(7.3, 0.1);
  const cplx a = mordell_h(u, t, MordellMethod::kQuadrature).value;
  const cplx b = mordell_h(u, t, MordellMethod::kMuIdentity).value;
  // mpmath quadrature at 40 digits
  const cplx ref(-1.88917016293273386083258e69, -9.484150110614979482379171e68);
  CHECK(std::abs(a - ref) / std::abs(ref) < 1e-12);
  CHECK(std::abs(b - ref) / std::abs(ref) < 1e-8);
}

TEST_CASE("boundary-safe g_ab") {
  CHECK(reduction_steps(cplx(0.2, 0.7)) == 0);
  const cplx hi(0.2, 0.7);
  CHECK(g_eval_reduced({0.3, 0.1}, hi).value == g_ab({0.3, 0.1}, UpperHalfPoint(hi)).value);

  // brute force: direct summation of nu exp(pi i nu^2 z + 2 pi i nu b), nu in 1/3 + Z
  const cplx z(1.0, 0.01);
  cplx direct = 0.0;
  for (long n = -100000; n <= 100000; ++n) {
    const double nu = n + 1.0 / 3.0;
    direct += nu * std::exp(kPi * kI * nu * nu * z + 2.0 * kPi * kI * nu * 0.5);
  }
  CHECK(std::abs(g_eval_reduced({1.0 / 3.0, 0.5}, z).value - direct) < 1e-8);

  for (const double d : {1.0, 0.5}) {
    CHECK(std::abs(g_eval_reduced({1.0 / 3.0, 0.5}, cplx(d, 1e-3)).value) < 1e-6);
    CHECK(std::abs(g_eval_reduced({1.0 / 3.0, 0.0}, cplx(d, 1e-3)).value) < 1e-6);
  }
}

TEST_CASE("period theorem") {
  const UpperHalfPoint t(0.0, 1.2);
  const cplx tau = t.value();
  const double a = 0.2, b = 0.3;
  const cplx pre = -e2pi(a * (b + 0.5)) * e2pi(-0.5 * a * a * tau);
  const cplx p1 = period_integral({a + 0.5, b + 0.5}, PathSpec::from_minus_conj_tau(), tau).value;
  CHECK(std::abs(p1 - pre * r_corr(a * tau - b, t).value) < 1e-6);
  const cplx p2 = period_integral({a + 0.5, b + 0.5}, PathSpec::from_point(0.0), tau).value;
  CHECK(std::abs(p2 - pre * mordell_h(a * tau - b, t).value) < 1e-6);
}

TEST_CASE("extended period lemma, third form") {
  const UpperHalfPoint t(0.0, 1.0);
  const cplx tau = t.value();
  const double a = 0.2;
  const cplx lhs = period_integral({a + 0.5, 1.0}, PathSpec::from_point(0.0), tau).value;
  const cplx rhs =
      -e2pi(-0.5 * a * a * tau + a) * mordell_h(a * tau - 0.5, t).value + e2pi(a) / principal_sqrt(-kI * tau);
  CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("period integral at real tau") {
  const cplx v = period_integral({1.0 / 3.0, 0.5}, PathSpec::from_point(1.0), cplx(0.25, 0.0)).value;
  CHECK(std::isfinite(v.real()));
  bool singular = false;
  try {
    period_integral({1.0 / 3.0, 0.5}, PathSpec::from_point(1.0), cplx(-1.0005, 0.0));
  } catch (const Error& e) {
    singular = e.kind() == ErrorKind::kSingularEndpoint;
  }
  CHECK(singular);
}

TEST_CASE("delta vanishes and shifts") {
  const UpperHalfPoint i(0.0, 1.0);
  CHECK(std::abs(delta(0.1, 0.2, i).value) < 1e-6);

  const UpperHalfPoint t(0.0, 1.5);
  const cplx tau = t.value();
  const double x = 0.3, y = 0.1;
  const cplx d = delta(x, y, t).value;
  const cplx sy = delta(x, y + 1.0, t).value + e2pi(x) * d -
                  2.0 * e2pi(x) / principal_sqrt(-kI * tau) * std::exp(kPi * kI * (y + 0.5) * (y + 0.5) / tau);
  CHECK(std::abs(sy) < 1e-6);
  const cplx sx = delta(x + 1.0, y, t).value - d +
                  2.0 * std::exp(kPi * kI * (x + y)) * e2pi(x * y) * e2pi(-0.5 * (x + 0.5) * (x + 0.5) * tau);
  CHECK(std::abs(sx) < 1e-6);
}
