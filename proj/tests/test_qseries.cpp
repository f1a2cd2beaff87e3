#include <doctest.h>

#include "mockq/qseries.hpp"

using namespace mockq;

namespace {

// mpmath at 40 digits, see tests/oracles/frozen_values.py
constexpr double kEtaI = 0.7682254223260566590;

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("eta reference values") {
  const UpperHalfPoint i(0.0, 1.0);
  const EvalResult r = eta(i);
  CHECK(std::abs(r.value - kEtaI) < 1e-14);
  CHECK(r.err_bound > 0.0);

  const cplx shifted = eta(UpperHalfPoint(1.0, 1.0)).value;
  CHECK(std::abs(shifted - std::exp(kPi * kI / 12.0) * r.value) < 1e-12);

  const double q = std::exp(-20.0 * kPi);
  CHECK(std::abs(eta(UpperHalfPoint(0.0, 10.0)).value - std::pow(q, 1.0 / 24.0) * (1.0 - q)) < 1e-12);
}

TEST_CASE("eta rejects small imaginary part") {
  CHECK(throws_kind(ErrorKind::kImTooSmall, [] { eta(UpperHalfPoint(0.0, 0.01)); }));
  TruncationPolicy loose;
  loose.min_im = 0.005;
  CHECK_NOTHROW(eta(UpperHalfPoint(0.0, 0.01), loose));
}

TEST_CASE("policy validation") {
  TruncationPolicy p;
  p.target_abs_err = 1e-2;
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [&] { p.validate(); }));
  p = {};
  p.max_terms = 0;
  CHECK(throws_kind(ErrorKind::kInvalidArgument, [&] { p.validate(); }));
}

TEST_CASE("theta") {
  const UpperHalfPoint t(0.2, 0.9);
  CHECK(std::abs(theta(0.0, UpperHalfPoint(0.0, 1.0)).value) < 1e-15);
  CHECK(std::abs(theta(0.0, t, ThetaMode::kProduct).value) == 0.0);
  const cplx z(0.3, 0.1);
  CHECK(std::abs(theta(-z, t).value + theta(z, t).value) < 1e-14);
  const UpperHalfPoint t2(0.0, 1.3);
  CHECK(std::abs(theta(0.17, t2, ThetaMode::kSum).value - theta(0.17, t2, ThetaMode::kProduct).value) < 1e-11);
}

TEST_CASE("mu elliptic and symmetry laws") {
  const UpperHalfPoint t(0.1, 0.8);
  const cplx tau = t.value();
  const cplx u = 0.3 * tau + 0.1, v = 0.5 * tau;
  const cplx m = mu(u, v, t).value;
  CHECK(std::abs(mu(u + 1.0, v, t).value + m) < 1e-12);
  CHECK(std::abs(mu(-u, -v, t).value - m) < 1e-12);
  CHECK(std::abs(mu(v, u, t).value - m) < 1e-12);
}

TEST_CASE("mu rejects lattice points") {
  const UpperHalfPoint t(0.0, 1.0);
  CHECK(throws_kind(ErrorKind::kSingularInput, [&] { mu(t.value(), 0.3, t); }));
  CHECK(throws_kind(ErrorKind::kSingularInput, [&] { mu(0.3, 2.0, t); }));
}

TEST_CASE("Kang identity at alpha = tau / 6") {
  const UpperHalfPoint t(0.2, 1.1);
  const cplx tau = t.value();
  const cplx al = tau / 6.0;
  const cplx lhs = mu(2.0 * al, 0.5 * tau, t).value;
  const cplx q8 = e2pi(tau / 8.0);
  const cplx g = g2(e2pi(al), e2pi(0.5 * tau)).value;
  const cplx e1 = eta(t).value, eh = eta(UpperHalfPoint(0.5 * tau)).value;
  const cplx th = theta(2.0 * al, t).value;
  CHECK(std::abs(lhs - kI * q8 * g + e2pi(-al) * q8 * std::pow(e1, 4) / (eh * eh * th)) < 1e-8);
}

TEST_CASE("R and the completion") {
  const UpperHalfPoint i(0.0, 1.0);
  const EvalResult r = r_corr(0.3, i);
  CHECK(r.terms_used < 200);
  CHECK(r.err_bound > 0.0);

  const UpperHalfPoint t(0.15, 0.9);
  const cplx tau = t.value();
  const cplx u = 0.37 * tau + 0.21, v = 0.61 * tau - 0.13;
  const cplx mh = mu_hat(u, v, t).value;
  CHECK(std::abs(mu_hat(u + 1.0, v, t).value + mh) < 1e-9);
  CHECK(std::abs(mu_hat(-u, -v, t).value - mh) < 1e-9);
  // lattice shift u -> u + tau
  CHECK(std::abs(mu_hat(u + tau, v, t).value + std::exp(kPi * kI * tau + 2.0 * kPi * kI * (u - v)) * mh) < 1e-9);
  // S-law: psi(S)^{-3} = e(3/8)
  const cplx lhs = mu_hat(u / tau, v / tau, UpperHalfPoint(-1.0 / tau)).value;
  const cplx rhs = e2pi(0.375) * principal_sqrt(tau) * std::exp(-kPi * kI * (u - v) * (u - v) / tau) * mh;
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("g_ab laws") {
  const UpperHalfPoint i(0.0, 1.0);
  const cplx g = g_ab({0.2, 0.7}, i).value;
  CHECK(std::abs(g_ab({1.2, 0.7}, i).value - g) < 1e-13);
  CHECK(std::abs(g_ab({-0.2, -0.7}, i).value + g) < 1e-13);
  for (const UpperHalfPoint t : {UpperHalfPoint(0.0, 1.0), UpperHalfPoint(0.3, 0.8)}) {
    const cplx e = eta(t).value;
    CHECK(std::abs(g_ab({0.5, 0.5}, t).value - kI * e * e * e) < 1e-10);
  }
}

TEST_CASE("g2 at a root of unity") {
  const cplx z = kI * std::exp(kPi * kI / 3.0);
  const EvalResult r = g2(z, kI);
  CHECK(r.terms_used == 2);
  // exact cyclotomic value, frozen
  CHECK(std::abs(r.value - cplx(-0.2113248654051871177, 0.2113248654051871177)) < 1e-14);
  CHECK(std::abs(g2_at_root(z, 1, 2).value - r.value) < 1e-15);
  CHECK(throws_kind(ErrorKind::kDivergentModulus, [] { g2(0.3, 1.1); }));
  CHECK(throws_kind(ErrorKind::kDivergentModulus, [] { g2_at_root(cplx(0.3), 2, 3); }));
  CHECK(throws_kind(ErrorKind::kSingularDenominator, [] { g2_at_root(Rational(0), 1, 3); }));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(0.7, 0.3, 0L).value == cplx(1.0));
  CHECK(std::abs(pochhammer(1.0, 0.4, 3L).value) == 0.0);
  const cplx q = e2pi(cplx(0.5, 0.0001));
  CHECK(std::abs(pochhammer(q, q, std::nullopt).value) < 1e-3);
}
