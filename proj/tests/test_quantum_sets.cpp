#include <doctest.h>

#include <numeric>

#include "mockq/quantum_sets.hpp"
#include "mockq/valpha.hpp"

using namespace mockq;

TEST_CASE("S_alpha membership examples") {
  const SetSpec s130 = SetSpec::salpha(AlphaParams(1, 3, 0));
  CHECK(set_member(s130, RationalPoint(1, 2)));
  CHECK(set_member(s130, RationalPoint(-1, 1)));
  CHECK_FALSE(set_member(s130, RationalPoint(3, 1)));

  const SetSpec s121 = SetSpec::salpha(AlphaParams(1, 2, 1));
  CHECK(set_member(s121, RationalPoint(1, 2)));
  CHECK_FALSE(set_member(s121, RationalPoint(1, 3)));

  CHECK(set_member(SetSpec::salpha(AlphaParams(1, 4, 1)), RationalPoint(1, 3)));
}

TEST_CASE("membership formula equals the defining predicates") {
  const std::vector<AlphaParams> alphas = {AlphaParams(1, 3, 0), AlphaParams(2, 3, 0), AlphaParams(1, 3, 1),
                                           AlphaParams(1, 4, 1), AlphaParams(1, 5, 2), AlphaParams(2, 5, 3),
                                           AlphaParams(1, 2, 1), AlphaParams(1, 6, 1)};
  long mismatches = 0;
  for (const auto& al : alphas) {
    const SetSpec spec = SetSpec::salpha(al);
    for (std::int64_t h = -199; h <= 199; h += 2) {
      for (std::int64_t k = 1; k <= 200; ++k) {
        if (std::gcd(h, k) != 1) continue;
        if (set_member(spec, RationalPoint(h, k)) != set_member_raw(spec, h, k)) ++mismatches;
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("members are non-singular and evaluable") {
  const std::vector<AlphaParams> alphas = {AlphaParams(1, 3, 0), AlphaParams(1, 3, 1), AlphaParams(1, 4, 1),
                                           AlphaParams(1, 2, 1), AlphaParams(2, 5, 3)};
  for (const auto& al : alphas) {
    const SetSpec spec = SetSpec::salpha(al);
    for (std::int64_t h = -41; h <= 41; h += 2) {
      for (std::int64_t k = 1; k <= 40; ++k) {
        if (std::gcd(h, k) != 1 || !set_member_raw(spec, h, k)) continue;
        const RationalPoint p(h, k);
        CHECK(nonsingular_check(al, p));
        CHECK(min_g2_denominator(al, p) > 1e-10);
        CHECK_NOTHROW(v_alpha(al, p));
      }
    }
  }
}

TEST_CASE("singular points") {
  CHECK(min_g2_denominator(AlphaParams(1, 3, 0), RationalPoint(3, 1)) < 1e-10);
  CHECK_FALSE(nonsingular_check(AlphaParams(1, 2, 1), RationalPoint(1, 3)));
}

TEST_CASE("closure under G_alpha") {
  for (const auto& al : {AlphaParams(1, 3, 0), AlphaParams(1, 2, 1)}) {
    const IdentityReport r = closure_check(al, 200, 11);
    CHECK(r.cases == 200);
    CHECK(r.failures.empty());
    CHECK(r.max_residual == 0.0);
  }
}

TEST_CASE("action on rationals") {
  std::int64_t h, k;
  CHECK(act_on_rational(1, 0, 1, 1, 1, 2, h, k));
  CHECK((h == 1 && k == 3));
  CHECK_FALSE(act_on_rational(1, 0, 1, 1, -1, 1, h, k));
  CHECK(act_on_rational(1, 6, 0, 1, -1, 2, h, k));
  CHECK((h == 11 && k == 2));
}
