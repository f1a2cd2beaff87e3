#include "mockq/quantum_sets.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "mockq/modgroup.hpp"
#include "mockq/rational.hpp"

namespace mockq {

namespace {

bool divides(std::int64_t m, std::int64_t v) { return v % m == 0; }

bool in_sc1(std::int64_t c, std::int64_t h) { return !divides(c, h); }
bool in_sc2(std::int64_t c, std::int64_t h) { return !divides(c, 2 * h); }

}  // namespace

bool set_member(const SetSpec& spec, const RationalPoint& p) {
  switch (spec.kind) {
    case SetSpec::Kind::kS:
      return true;
    case SetSpec::Kind::kSC1:
      return in_sc1(spec.c, p.h);
    case SetSpec::Kind::kSC2:
      return in_sc2(spec.c, p.h);
    case SetSpec::Kind::kSev:
      return in_sc1(spec.c, p.h) && p.k % 2 == 0;
    case SetSpec::Kind::kSalpha:
      if (spec.a % 2 == 0) return in_sc1(spec.c, p.h);
      return in_sc2(spec.c, p.h) || (in_sc1(spec.c, p.h) && p.k % 2 == 0);
  }
  return false;
}

bool set_member_raw(const SetSpec& spec, std::int64_t h, std::int64_t k) {
  const bool in_s = k >= 1 && std::gcd(h, k) == 1 && (h % 2 == 1 || h % 2 == -1);
  if (!in_s) return false;
  const bool sc1 = h % spec.c != 0;
  const bool sc2 = (2 * h) % spec.c != 0;
  const bool sev = sc1 && k % 2 == 0;
  switch (spec.kind) {
    case SetSpec::Kind::kS:
      return true;
    case SetSpec::Kind::kSC1:
      return sc1;
    case SetSpec::Kind::kSC2:
      return sc2;
    case SetSpec::Kind::kSev:
      return sev;
    case SetSpec::Kind::kSalpha:
      return (spec.a == 0 || spec.a == 2) ? sc1 : (sc2 || sev);
  }
  return false;
}

bool nonsingular_check(const AlphaParams& al, const RationalPoint& p) {
  // 2hC n = -+(2hA + aCk) (mod 2Ck) is solvable iff gcd(2hC, 2Ck) = 2C divides
  // the right-hand side; the sign does not change that.
  const __int128 c = al.C();
  const __int128 rhs = 2 * static_cast<__int128>(p.h) * al.A() + static_cast<__int128>(al.a()) * c * p.k;
  return rhs % (2 * c) != 0;
}

double min_g2_denominator(const AlphaParams& al, const RationalPoint& p) {
  // z = e(a/4 + A h / (2 C k)), Q = e(h / (2k))
  const Rational zp = Rational(al.a(), 4) + Rational(static_cast<__int128>(al.A()) * p.h, 2 * al.C() * p.k);
  const Rational qp(p.h, 2 * p.k);
  double best = 2.0;
  for (std::int64_t j = 0; j < p.k; ++j) best = std::min(best, std::abs(one_minus_e2pi(zp + qp * Rational(j))));
  for (std::int64_t j = 1; j <= p.k; ++j) best = std::min(best, std::abs(one_minus_e2pi(-zp + qp * Rational(j))));
  return best;
}

bool act_on_rational(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w, std::int64_t h,
                     std::int64_t k, std::int64_t& h_out, std::int64_t& k_out) {
  const __int128 num = static_cast<__int128>(x) * h + static_cast<__int128>(y) * k;
  const __int128 den = static_cast<__int128>(z) * h + static_cast<__int128>(w) * k;
  if (den == 0) return false;
  const Rational r(num, den);
  h_out = r.num();
  k_out = r.den();
  return true;
}

IdentityReport closure_check(const AlphaParams& al, long samples, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport rep;
  rep.suite = "set-closure";
  rep.seed = seed;
  rep.tolerance = 0.0;
  const SetSpec spec = SetSpec::salpha(al);
  std::vector<IntMatrix2> moves;
  for (const auto& g : galpha_generators(al)) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dh(-1000, 1000), dk(1, 1000);
  long drawn = 0;
  while (drawn < samples) {
    const std::int64_t h = dh(rng), k = dk(rng);
    if (!set_member_raw(spec, h, k)) continue;
    ++drawn;
    const RationalPoint p(h, k);
    for (const auto& m : moves) {
      std::int64_t h2, k2;
      if (!act_on_rational(m.x(), m.y(), m.z(), m.w(), p.h, p.k, h2, k2)) continue;
      const bool ok = set_member_raw(spec, h2, k2);
      rep.record(ok ? 0.0 : 1.0, "alpha=" + al.str() + " point=" + p.str() + " move=" + m.str() +
                                     " image=" + std::to_string(h2) + "/" + std::to_string(k2));
    }
  }
  rep.cases = drawn;
  rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
  return rep;
}

}  // namespace mockq
