#include "mockq/modgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace mockq {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw Error(ErrorKind::kOverflow, "matrix entry exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

std::int64_t mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

__int128 mod128(__int128 v, __int128 m) {
  const __int128 r = v % m;
  return r < 0 ? r + m : r;
}

bool divides(std::int64_t m, std::int64_t v) { return mod(v, m) == 0; }

// Gamma^1(n): y = 0, x = w = 1 mod n.
bool in_gamma1_upper(const IntMatrix2& g, std::int64_t n) {
  return divides(n, g.y()) && mod(g.x(), n) == mod(1, n) && mod(g.w(), n) == mod(1, n);
}
bool in_gamma1(const IntMatrix2& g, std::int64_t n) {
  return divides(n, g.z()) && mod(g.x(), n) == mod(1, n) && mod(g.w(), n) == mod(1, n);
}
bool in_gamma0_upper(const IntMatrix2& g, std::int64_t n) { return divides(n, g.y()); }
bool in_gamma0(const IntMatrix2& g, std::int64_t n) { return divides(n, g.z()); }

// Congruence pattern shared by every sampled group:
// y = 0 mod p, x = w = x0 mod q, z = 0 mod l (or z odd).
struct Pattern {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t x0 = 0;
  std::int64_t l = 1;
  bool z_odd = false;
};

std::vector<Pattern> patterns_for(const GroupSpec& g) {
  switch (g.kind) {
    case GroupSpec::Kind::kGamma0:
      return {{1, 1, 0, g.n, false}};
    case GroupSpec::Kind::kGamma0Upper:
      return {{g.n, 1, 0, 1, false}};
    case GroupSpec::Kind::kGamma1:
      return {{1, g.n, 1, g.n, false}};
    case GroupSpec::Kind::kGamma1Upper:
      return {{g.n, g.n, 1, 1, false}};
    case GroupSpec::Kind::kAalpha: {
      const AlphaParams& al = *g.alpha;
      const std::int64_t c = al.C();
      const std::int64_t n = std::lcm<std::int64_t>(2, c);
      if (!al.a_odd()) return {{n, n, 1, 1, false}};
      if (c % 4 != 0) return {{n, n, 1, 2, false}};
      return {{c, c, 1, 2, false}, {c, c, c / 2 + 1, 1, true}};
    }
    case GroupSpec::Kind::kGalpha:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument, "sample_element: G_alpha has no congruence description");
}

// x s + y t = g = gcd(x, y) >= 0
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, cs) = std::make_pair(cs, old_s - qt * cs);
    std::tie(old_t, ct) = std::make_pair(ct, old_t - qt * ct);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t round_div(std::int64_t a, std::int64_t b) {
  if (b < 0) {
    a = -a;
    b = -b;
  }
  return floor_div(2 * a + b, 2 * b);
}

std::optional<IntMatrix2> try_sample(const Pattern& pat, std::mt19937_64& rng, std::int64_t bound_x,
                                     std::int64_t bound_z) {
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::int64_t x;
  if (pat.q > 1) {
    const std::int64_t lo = -floor_div(bound_x + pat.x0, pat.q);
    const std::int64_t hi = floor_div(bound_x - pat.x0, pat.q);
    x = pat.x0 + pat.q * uniform(lo, hi);
  } else {
    x = uniform(-bound_x, bound_x);
  }
  std::int64_t z;
  if (pat.z_odd) {
    z = 2 * uniform(-floor_div(bound_z + 1, 2), floor_div(bound_z - 1, 2)) + 1;
  } else {
    z = pat.l * uniform(-bound_z / pat.l, bound_z / pat.l);
  }
  const std::int64_t pz = pat.p * z;
  if (pz == 0) {
    if (x != 1 && x != -1) return std::nullopt;
    if (pat.q > 1 && mod(x, pat.q) != mod(pat.x0, pat.q)) return std::nullopt;
    const std::int64_t y = pat.p * uniform(-bound_x / pat.p, bound_x / pat.p);
    return IntMatrix2(x, y, z, x);
  }
  std::int64_t s, t;
  if (ext_gcd(x, pz, s, t) != 1) return std::nullopt;
  // x (s + pz j) - p (-t + x j) z = 1
  const std::int64_t j = round_div(-s, pz);
  const std::int64_t w = narrow(static_cast<__int128>(s) + static_cast<__int128>(pz) * j);
  const std::int64_t yp = narrow(static_cast<__int128>(-t) + static_cast<__int128>(x) * j);
  return IntMatrix2(x, narrow(static_cast<__int128>(pat.p) * yp), z, w);
}

IntMatrix2 power(const IntMatrix2& g, std::int64_t e) {
  IntMatrix2 base = e < 0 ? g.inverse() : g;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  IntMatrix2 out;
  while (n > 0) {
    if (n & 1U) out = out * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return out;
}

// All words of length <= depth in the generators and their inverses.
std::map<IntMatrix2, int> ball(const std::vector<IntMatrix2>& gens, int depth) {
  std::vector<IntMatrix2> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::map<IntMatrix2, int> seen{{IntMatrix2::identity(), 0}};
  std::vector<IntMatrix2> frontier{IntMatrix2::identity()};
  for (int d = 1; d <= depth; ++d) {
    std::vector<IntMatrix2> next;
    for (const auto& m : frontier) {
      for (const auto& l : letters) {
        try {
          const IntMatrix2 p = m * l;
          if (seen.emplace(p, d).second) next.push_back(p);
        } catch (const Error&) {
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

IntMatrix2::IntMatrix2(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) : x_(x), y_(y), z_(z), w_(w) {
  const __int128 det = static_cast<__int128>(x) * w - static_cast<__int128>(y) * z;
  if (det != 1) {
    throw Error(ErrorKind::kInvalidArgument, "matrix " + str() + " does not have determinant 1");
  }
}

IntMatrix2 IntMatrix2::inverse() const { return {w_, -y_, -z_, x_}; }

IntMatrix2 operator*(const IntMatrix2& l, const IntMatrix2& r) {
  using I = __int128;
  return {narrow(I(l.x_) * r.x_ + I(l.y_) * r.z_), narrow(I(l.x_) * r.y_ + I(l.y_) * r.w_),
          narrow(I(l.z_) * r.x_ + I(l.w_) * r.z_), narrow(I(l.z_) * r.y_ + I(l.w_) * r.w_)};
}

cplx IntMatrix2::apply(cplx tau) const {
  return (static_cast<double>(x_) * tau + static_cast<double>(y_)) / cocycle(tau);
}

cplx IntMatrix2::cocycle(cplx tau) const { return static_cast<double>(z_) * tau + static_cast<double>(w_); }

std::string IntMatrix2::str() const {
  std::ostringstream os;
  os << "[[" << x_ << "," << y_ << "],[" << z_ << "," << w_ << "]]";
  return os.str();
}

GroupSpec GroupSpec::make(Kind k, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "group level must be >= 1");
  return {k, n, std::nullopt};
}

int kronecker_symbol(std::int64_t m, std::int64_t n) {
  if (n == 0) return (m == 1 || m == -1) ? 1 : 0;
  if (m % 2 == 0 && n % 2 == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (m < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) {
    const std::int64_t r = mod(m, 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (m / n), n odd and positive
  std::int64_t a = mod(m, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

Rational eta_psi(const IntMatrix2& g) {
  const std::int64_t a = mod(g.x(), 24), b = mod(g.y(), 24), c = mod(g.z(), 24), d = mod(g.w(), 24);
  const std::int64_t bd_c2 = mod(b * d, 24) * mod(c * c - 1, 24);
  std::int64_t n;
  int sign;
  if (g.z() % 2 != 0) {
    sign = kronecker_symbol(g.w(), g.z() < 0 ? -g.z() : g.z());
    n = (a + d) * c - bd_c2 - 3 * c;
  } else {
    sign = kronecker_symbol(g.z(), g.w());
    n = (a + d) * c - bd_c2 + 3 * d - 3 - 3 * c * d;
  }
  Rational t(mod(n, 24), 24);
  if (sign < 0) t = t + Rational(1, 2);
  return t.frac();
}

AalphaBranch aalpha_branch(const AlphaParams& al, const IntMatrix2& g) {
  const std::int64_t c = al.C();
  const std::int64_t n = std::lcm<std::int64_t>(2, c);
  if (!al.a_odd()) return in_gamma1_upper(g, n) ? AalphaBranch::kMain : AalphaBranch::kNone;
  if (c % 4 != 0) return in_gamma1_upper(g, n) && in_gamma0(g, 2) ? AalphaBranch::kMain : AalphaBranch::kNone;
  if (in_gamma1_upper(g, c) && in_gamma0(g, 2)) return AalphaBranch::kMain;
  const std::int64_t h = c / 2 + 1;
  if (divides(c, g.y()) && mod(g.x(), c) == h && mod(g.w(), c) == h && g.z() % 2 != 0) {
    return AalphaBranch::kComposite;
  }
  return AalphaBranch::kNone;
}

bool aalpha_member_by_sets(const AlphaParams& al, const IntMatrix2& g) {
  const std::int64_t c = al.C();
  const std::int64_t n = std::lcm<std::int64_t>(2, c);
  if (!al.a_odd()) return in_gamma1_upper(g, n);
  if (c % 4 != 0) return in_gamma1_upper(g, n) && in_gamma0(g, 2);
  const bool g1 = in_gamma1_upper(g, c) && in_gamma0(g, 2);
  const bool g2 = in_gamma1_upper(g, c / 2) && in_gamma0_upper(g, c);
  const bool g3 = in_gamma0(g, 2) || in_gamma1_upper(g, c);
  return g1 || (g2 && !g3);
}

bool group_member(const GroupSpec& g, const IntMatrix2& m) {
  switch (g.kind) {
    case GroupSpec::Kind::kGamma0:
      return in_gamma0(m, g.n);
    case GroupSpec::Kind::kGamma0Upper:
      return in_gamma0_upper(m, g.n);
    case GroupSpec::Kind::kGamma1:
      return in_gamma1(m, g.n);
    case GroupSpec::Kind::kGamma1Upper:
      return in_gamma1_upper(m, g.n);
    case GroupSpec::Kind::kAalpha:
      return aalpha_branch(*g.alpha, m) != AalphaBranch::kNone;
    case GroupSpec::Kind::kGalpha: {
      const auto half = ball(galpha_generators(*g.alpha), galpha_search_depth / 2);
      if (half.contains(m)) return true;
      for (const auto& [r, len] : half) {
        try {
          if (half.contains(m * r)) return true;  // m r = l  =>  m = l r^{-1}
        } catch (const Error&) {
        }
      }
      throw Error(ErrorKind::kUnknownMembership,
                  "no G_alpha word of length <= " + std::to_string(galpha_search_depth) + " gives " + m.str());
    }
  }
  return false;
}

IntMatrix2 sample_element(const GroupSpec& g, std::uint64_t seed, const SampleBounds& bounds) {
  const std::vector<Pattern> pats = patterns_for(g);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    const Pattern& pat = pats.size() == 1 ? pats[0] : pats[std::uniform_int_distribution<int>(0, 1)(rng)];
    const std::int64_t modulus = std::max({pat.p, pat.q, pat.l, std::int64_t{2}});
    const std::int64_t bx = bounds.max_entry > 0 ? bounds.max_entry : 50 * modulus;
    const std::int64_t bz = bounds.max_z > 0 ? std::min(bx, bounds.max_z) : bx;
    if (auto m = try_sample(pat, rng, bx, bz)) {
      if (group_member(g, *m)) return *m;
    }
  }
  throw Error(ErrorKind::kSamplingFailure, "sample_element: 10^4 rejections");
}

std::vector<IntMatrix2> galpha_generators(const AlphaParams& al) {
  const IntMatrix2 m = al.a_odd() ? IntMatrix2(1, 0, 2, 1) : IntMatrix2(1, 0, 1, 1);
  const std::int64_t r = al.C() % 2 == 0 ? al.C() : 2 * al.C();
  return {m, IntMatrix2(1, r, 0, 1)};
}

IntMatrix2 word_to_matrix(const std::vector<IntMatrix2>& gens,
                          const std::vector<std::pair<int, std::int64_t>>& word) {
  IntMatrix2 out;
  for (const auto& [idx, e] : word) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= gens.size()) {
      throw Error(ErrorKind::kInvalidArgument, "word_to_matrix: generator index out of range");
    }
    out = out * power(gens[idx], e);
  }
  return out;
}

TildeShift tilde_decompose(const AlphaParams& al, const IntMatrix2& g) {
  const Rational ac = al.ratio();
  const Rational half(1, 2);
  const Rational a(al.a());
  const Rational k = ac * Rational(g.x() - 1) + a * Rational(g.z()) * half;
  const Rational l = ac * Rational(g.y()) + a * Rational(g.w() - 1) * half;
  const Rational r = Rational(g.x() - 1) * half;
  const Rational s = Rational(g.y()) * half;
  if (!(k.is_integer() && l.is_integer() && r.is_integer() && s.is_integer())) {
    std::ostringstream os;
    os << g << " not in A_alpha for alpha = (" << al.str() << "): shifts (" << k << ", " << l << ", " << r << ", "
       << s << ")";
    throw Error(ErrorKind::kNotInGroup, os.str());
  }
  const Rational check = Rational(2 * al.A() - al.C(), 2 * al.C()) * Rational(g.x() - 1) + a * Rational(g.z()) * half;
  if (!(k - r == check)) throw Error(ErrorKind::kInconsistentArguments, "tilde_decompose: k - r mismatch");
  return {k.num(), l.num(), r.num(), s.num()};
}

Rational phi_exponent(const AlphaParams& al, const IntMatrix2& g) {
  tilde_decompose(al, g);
  // e(N / D), D = 8 C^2:
  // N = -(2A-C)^2 x y - 2 a C (2A-C) x (w-1) - a^2 C^2 z (w-2)
  const __int128 c = al.C();
  const __int128 d = 8 * c * c;
  const __int128 m = 2 * static_cast<__int128>(al.A()) - c;
  const __int128 a = al.a();
  auto r = [&](__int128 v) { return mod128(v, d); };
  const __int128 x = r(g.x()), y = r(g.y()), z = r(g.z()), w1 = r(g.w() - 1), w2 = r(g.w() - 2);
  __int128 n = 0;
  n -= r(r(m * m) * r(x * y));
  n -= r(r(2 * a * c * m) * r(x * w1));
  n -= r(r(a * a * c * c) * r(z * w2));
  return Rational(mod128(n, d), d);
}

cplx phi_multiplier(const AlphaParams& al, const IntMatrix2& g) { return e2pi(phi_exponent(al, g)); }

cplx phi_multiplier_via_tau(const AlphaParams& al, const IntMatrix2& g, cplx tau) {
  const TildeShift t = tilde_decompose(al, g);
  const double p = al.prefactor_exponent().to_double();
  const double slope = al.ratio().to_double() - 0.5;
  const cplx gt = g.apply(tau);
  const cplx j = g.cocycle(tau);
  const cplx uv = slope * tau + 0.5 * al.a();         // u - v at tau
  const cplx uv_tilde = (slope * gt + 0.5 * al.a()) * j;  // u~ - v~
  const double kr = static_cast<double>(t.k - t.r);
  const cplx expo = -p * gt - static_cast<double>(g.z()) * uv_tilde * uv_tilde / (2.0 * j) + uv * kr +
                    0.5 * kr * kr * tau + p * tau;
  return e2pi(expo);
}

}  // namespace mockq
