#pragma once

#include <cstdint>

#include "mockq/alpha.hpp"
#include "mockq/report.hpp"

namespace mockq {

struct SetSpec {
  enum class Kind { kS, kSC1, kSC2, kSev, kSalpha };
  Kind kind = Kind::kS;
  std::int64_t c = 1;
  int a = 0;  // only read for kSalpha

  static SetSpec s() { return {Kind::kS, 1, 0}; }
  static SetSpec sc1(std::int64_t c) { return {Kind::kSC1, c, 0}; }
  static SetSpec sc2(std::int64_t c) { return {Kind::kSC2, c, 0}; }
  static SetSpec sev(std::int64_t c) { return {Kind::kSev, c, 0}; }
  static SetSpec salpha(const AlphaParams& al) { return {Kind::kSalpha, al.C(), al.a()}; }
};

/// S_alpha is S_C1 for a in {0, 2} and S_C2 u S_ev for a odd, where
/// S_C1: C does not divide h, S_C2: C does not divide 2h, S_ev: S_C1 with k even.
bool set_member(const SetSpec& spec, const RationalPoint& p);

/// Membership from the literal defining predicates on a raw pair (h, k),
/// including the conditions of S itself. Used to cross-check set_member.
bool set_member_raw(const SetSpec& spec, std::int64_t h, std::int64_t k);

/// True iff neither 2h(Cn + A) + aCk = 0 nor 2h(Cn - A) - aCk = 0 (mod 2Ck)
/// has a solution n >= 1. Decided as a linear congruence in n.
bool nonsingular_check(const AlphaParams& al, const RationalPoint& p);

/// Smallest |1 - z^{+-1} Q^j| over the denominator factors of the terminating
/// g_2 sum that represents V_alpha at h/k.
double min_g2_denominator(const AlphaParams& al, const RationalPoint& p);

/// Draws `samples` points of S_alpha with |h|, k <= 1000, applies every G_alpha
/// generator and inverse, and records each image that leaves S_alpha. Images
/// at infinity are cusps and are skipped.
IdentityReport closure_check(const AlphaParams& al, long samples, std::uint64_t seed);

/// Action of [[x, y], [z, w]] on h/k, reduced. Returns false for the image infinity.
bool act_on_rational(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w, std::int64_t h,
                     std::int64_t k, std::int64_t& h_out, std::int64_t& k_out);

}  // namespace mockq
