#include <doctest.h>

#include <map>

#include "mockq/modgroup.hpp"
#include "mockq/qseries.hpp"
#include "mockq/valpha.hpp"

using namespace mockq;

namespace {

// V at tau = i, mpmath at 40 digits (tests/oracles/frozen_values.py)
const std::map<std::string, double> kCatalogAtI = {
    {"V11", 0.17218408069656814744},   {"V21", -0.40763991768141488558}, {"V31", 0.10407974652066083964},
    {"V4'1", -1.6742972928770447507},  {"V4''1", -0.23234483319798127167}, {"V51", 0.25889254481467919149},
    {"V61", -0.28601458112259050804}};

const UpperHalfPoint kI1(0.0, 1.0);

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(AlphaParams(2, 4, 1), Error);
  CHECK_THROWS_AS(AlphaParams(1, 0, 1), Error);
  CHECK_THROWS_AS(AlphaParams(1, 3, 4), Error);
  CHECK_THROWS_AS(AlphaParams(1, 1, 0), Error);
  CHECK_NOTHROW(AlphaParams(1, 1, 1));
  CHECK_FALSE(AlphaParams(1, 2, 1).theorem_ready());
  CHECK(AlphaParams(1, 2, 0).theorem_ready());
  CHECK_FALSE(AlphaParams(4, 3, 0).theorem_ready());
  CHECK_THROWS_AS(RationalPoint(2, 3), Error);
  CHECK(make_rational_point(-6, -4).str() == "3/2");
}

TEST_CASE("catalog") {
  const auto cat = catalog_tuples();
  REQUIRE(cat.size() == 7);
  for (const auto& e : cat) {
    INFO(e.name);
    CHECK(std::abs(v_alpha(e.alpha, kI1).value - kCatalogAtI.at(e.name)) < 1e-13);
  }
  CHECK(cat[4].alpha == AlphaParams(5, 12, 0));
}

TEST_CASE("rational evaluation") {
  const AlphaParams al(1, 3, 0);
  // exact cyclotomic value
  CHECK(std::abs(v_alpha(al, RationalPoint(1, 2)).value - cplx(1.010854986747587737, -0.4713694216045697754)) < 1e-14);
  CHECK_THROWS_AS(v_alpha(al, RationalPoint(3, 1)), Error);
  // heavy cancellation in the terminating sum; mpmath at 80 and 200 digits
  const AlphaParams b(1, 4, 0);
  CHECK(std::abs(v_alpha(b, RationalPoint(3, 125)).value - cplx(-4.0646685710967803951, 0.0070448317145730020016)) <
        1e-12);
  CHECK(std::abs(v_alpha(b, RationalPoint(1, 199)).value - cplx(-9.4749825396235814394, 0.0014798006350582311423)) <
        1e-12);
}

TEST_CASE("vertical approach to a rational point") {
  const AlphaParams al(1, 3, 0);
  const cplx at = v_alpha(al, RationalPoint(1, 2)).value;
  double prev = 1e300;
  for (const double t : {0.4, 0.2, 0.1}) {
    const double d = std::abs(v_alpha(al, UpperHalfPoint(0.5, t)).value - at);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("completion") {
  const AlphaParams al(1, 3, 0);
  const cplx diff = v_hat(al, kI1).value - v_alpha(al, kI1).value;
  const double p = 1.0 / 72.0;  // (2A - C)^2 / (8 C^2)
  const cplx pre = kI * std::exp(2.0 * kPi * p);
  const cplx uv = (1.0 / 3.0 - 0.5) * kI1.value();
  CHECK(std::abs(diff - pre * 0.5 * kI * r_corr(uv, kI1).value) < 1e-14);
  for (const UpperHalfPoint t : {UpperHalfPoint(0.2, 0.9), UpperHalfPoint(-0.3, 1.4)}) {
    CHECK(std::abs(v_hat(al, t).value - v_hat_via_m_hat(al, t).value) < 1e-12);
  }
  CHECK_THROWS_AS(m_hat({0.1, 0.2}, 0.3, 0.1, kI1), Error);
  const cplx v(0.2, 0.3);
  CHECK(std::isfinite(std::abs(m_hat({0.0, 0.0}, v, v, kI1).value)));
}

TEST_CASE("Laplacian") {
  CHECK(laplacian_residual(AlphaParams(1, 3, 0), kI1) < 1e-4);
  CHECK(laplacian_residual(AlphaParams(1, 4, 1), UpperHalfPoint(0.3, 1.2)) < 1e-4);
  // weight 3/2 does not annihilate V_hat
  CHECK(laplacian_residual(AlphaParams(1, 3, 0), kI1, 1e-3, {}, LaplacianTarget::kCompleted, 1.5) > 1e-2);
  CHECK_THROWS_AS(laplacian_residual(AlphaParams(1, 3, 0), kI1, 0.5), Error);
}

TEST_CASE("mock transformation") {
  CHECK(mock_transform_residual(AlphaParams(1, 3, 0), IntMatrix2(1, 6, 0, 1), kI1) < 1e-9);
  CHECK(mock_transform_residual(AlphaParams(1, 4, 1), IntMatrix2(3, 8, 1, 3), UpperHalfPoint(0.2, 1.1)) < 1e-8);
  CHECK(mock_transform_residual(AlphaParams(2, 5, 3), IntMatrix2::identity(), kI1) == 0.0);
}

TEST_CASE("quantum M-laws") {
  const AlphaParams a0(1, 3, 0), a1(1, 3, 1);
  CHECK(qm_residual_m(a0, 1, RationalPoint(1, 2), MForm::kPart1) < 1e-6);
  CHECK(qm_residual_m(a1, 2, RationalPoint(1, 2), MForm::kPart2) < 1e-6);
  CHECK(qm_residual_m(a0, 1, kI1, MForm::kGeneral) < 1e-7);
  CHECK(qm_residual_m(a0, 1, kI1, MForm::kPart1) < 1e-7);
  CHECK_THROWS_AS(qm_residual_m(a0, 1, RationalPoint(-1, 1), MForm::kPart1), Error);
  CHECK_THROWS_AS(qm_residual_m(a1, 1, kI1, MForm::kGeneral), Error);
}

TEST_CASE("quantum T-laws") {
  CHECK(qm_residual_t(AlphaParams(1, 3, 0), 6, RationalPoint(1, 2), TForm::kPart3) < 1e-10);
  CHECK(qm_residual_t(AlphaParams(1, 4, 1), 4, RationalPoint(1, 2), TForm::kPart3) < 1e-10);
  for (const AlphaParams& al : {AlphaParams(1, 3, 0), AlphaParams(1, 4, 1)}) {
    const std::int64_t r = al.C() % 2 == 0 ? al.C() : 2 * al.C();
    CHECK(qm_residual_t(al, r, kI1, TForm::kProposition) < 1e-12);
    CHECK(qm_residual_t(al, r, kI1, TForm::kPart3) < 1e-12);
  }
  CHECK_THROWS_AS(qm_residual_t(AlphaParams(1, 3, 0), 3, kI1, TForm::kPart3), Error);
}

TEST_CASE("finite terms of the M-law") {
  const UpperHalfPoint t(0.1, 0.8);
  for (const auto& [al, r] : {std::pair{AlphaParams(1, 3, 0), 1}, std::pair{AlphaParams(1, 4, 1), 2}}) {
    CHECK(std::abs(m_mordell_terms(al, r, t).value - m_period_term(al, r, t.value()).value) < 1e-6);
  }
  CHECK(branch_residual(2, cplx(-2.5, 0.01)) < 1e-12);
}
