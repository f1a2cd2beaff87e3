#pragma once

// Exact SL2(Z) arithmetic: congruence subgroups, the composite group A_alpha,
// the generated group G_alpha, the eta multiplier and the tilde shifts that
// drive the transformation law of the completed V_alpha.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mockq/alpha.hpp"
#include "mockq/rational.hpp"
#include "mockq/types.hpp"

namespace mockq {

/// [[x, y], [z, w]] with x w - y z = 1.
class IntMatrix2 {
 public:
  IntMatrix2() = default;
  IntMatrix2(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w);

  static IntMatrix2 identity() { return {}; }

  std::int64_t x() const { return x_; }
  std::int64_t y() const { return y_; }
  std::int64_t z() const { return z_; }
  std::int64_t w() const { return w_; }

  IntMatrix2 inverse() const;
  /// Throws Overflow when an entry leaves the 64-bit range.
  friend IntMatrix2 operator*(const IntMatrix2& l, const IntMatrix2& r);
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
  friend auto operator<=>(const IntMatrix2&, const IntMatrix2&) = default;

  /// (x tau + y) / (z tau + w)
  cplx apply(cplx tau) const;
  /// z tau + w
  cplx cocycle(cplx tau) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix2& m) { return os << m.str(); }

 private:
  std::int64_t x_ = 1, y_ = 0, z_ = 0, w_ = 1;
};

struct GroupSpec {
  enum class Kind { kGamma0, kGamma0Upper, kGamma1, kGamma1Upper, kAalpha, kGalpha };
  Kind kind = Kind::kGamma0;
  std::int64_t n = 1;
  std::optional<AlphaParams> alpha;

  static GroupSpec gamma0(std::int64_t n) { return make(Kind::kGamma0, n); }
  static GroupSpec gamma0_upper(std::int64_t n) { return make(Kind::kGamma0Upper, n); }
  static GroupSpec gamma1(std::int64_t n) { return make(Kind::kGamma1, n); }
  static GroupSpec gamma1_upper(std::int64_t n) { return make(Kind::kGamma1Upper, n); }
  static GroupSpec a_alpha(const AlphaParams& al) { return {Kind::kAalpha, 1, al}; }
  static GroupSpec g_alpha(const AlphaParams& al) { return {Kind::kGalpha, 1, al}; }

 private:
  static GroupSpec make(Kind k, std::int64_t n);
};

struct TildeShift {
  std::int64_t k = 0, l = 0, r = 0, s = 0;
  friend bool operator==(const TildeShift&, const TildeShift&) = default;
};

/// Kronecker symbol (m / n).
int kronecker_symbol(std::int64_t m, std::int64_t n);

/// psi(gamma) = e(t) for the returned t in [0, 1), so that
/// eta(gamma tau) = psi(gamma) (z tau + w)^{1/2} eta(tau).
Rational eta_psi(const IntMatrix2& g);

/// Which piece of A_alpha a matrix falls in. For a odd and 4 | C the group is
/// the union of Gamma^1(C) with Gamma_0(2) (kMain) and the elements
/// x = w = C/2 + 1 mod C, y = 0 mod C, z odd (kComposite). In every other
/// case A_alpha is a plain congruence group and members report kMain.
enum class AalphaBranch { kNone, kMain, kComposite };
AalphaBranch aalpha_branch(const AlphaParams& al, const IntMatrix2& g);

/// Same decision as aalpha_branch, from the literal set expression
/// (G1) u ((G2) \ (G3)) rather than the reduced canonical form.
bool aalpha_member_by_sets(const AlphaParams& al, const IntMatrix2& g);

/// Exact for the congruence kinds. For kGalpha a meet-in-the-middle search
/// over generator words of length <= galpha_search_depth; throws
/// UnknownMembership when no word is found.
bool group_member(const GroupSpec& g, const IntMatrix2& m);
inline constexpr int galpha_search_depth = 12;

struct SampleBounds {
  std::int64_t max_entry = 0;  // bound on |x| and |z|; 0 selects 50 * modulus
  std::int64_t max_z = 0;      // extra bound on |z|; 0 means none
};

/// Deterministic random element of a congruence-defined group. The first
/// column (x, z) is drawn under the group's congruences with gcd(x, z) = 1,
/// the second column is solved from the determinant. For composite A_alpha
/// each branch is picked with probability 1/2.
IntMatrix2 sample_element(const GroupSpec& g, std::uint64_t seed, const SampleBounds& bounds = {});

/// Generators of G_alpha: [[1,0],[1,1]] for a even or [[1,0],[2,1]] for a
/// odd, then [[1,C],[0,1]] for C even or [[1,2C],[0,1]] for C odd.
std::vector<IntMatrix2> galpha_generators(const AlphaParams& al);

/// Left-to-right product of gens[index]^exponent.
IntMatrix2 word_to_matrix(const std::vector<IntMatrix2>& gens, const std::vector<std::pair<int, std::int64_t>>& word);

/// (k, l, r, s) with u~ - u = k tau + l and v~ - v = r tau + s, where
/// u = (A/C) tau + a/2, v = tau / 2 and x~ = x_{gamma tau} (z tau + w).
/// Throws NotInGroup if any coefficient is not an integer.
TildeShift tilde_decompose(const AlphaParams& al, const IntMatrix2& g);

/// Exponent t in [0,1) of the root of unity phi = e(t) from its closed form.
Rational phi_exponent(const AlphaParams& al, const IntMatrix2& g);
cplx phi_multiplier(const AlphaParams& al, const IntMatrix2& g);
/// The defining tau-dependent product, evaluated at tau.
cplx phi_multiplier_via_tau(const AlphaParams& al, const IntMatrix2& g, cplx tau);

}  // namespace mockq
