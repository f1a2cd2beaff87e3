#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "mockq/types.hpp"

namespace mockq::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

struct TwoSidedSum {
  cplx sum{};
  double abs_sum = 0.0;  // sum of |term|, drives the roundoff estimate
  double tail = 0.0;     // sum of majorants over all skipped indices
  long terms = 0;
};

/// Sums term(n) over all integers n, walking outward from `center` in both
/// directions. A side stops once it is outside [keep_lo, keep_hi], the
/// log-majorant log_bound(n) is below log_cut and still decreasing. Skipped
/// indices contribute exp(log_bound) to the tail estimate.
template <class TermFn, class LogBoundFn>
TwoSidedSum sum_two_sided(TermFn&& term, LogBoundFn&& log_bound, long center, double log_cut, long max_terms,
                          long keep_lo, long keep_hi, const char* who) {
  TwoSidedSum out;
  auto add = [&](long n) {
    const cplx t = term(n);
    out.sum += t;
    out.abs_sum += std::abs(t);
    if (++out.terms > max_terms) {
      throw Error(ErrorKind::kQuadratureFailure, std::string(who) + ": series exceeded max_terms");
    }
  };
  add(center);
  for (const long dir : {1L, -1L}) {
    long n = center + dir;
    for (;;) {
      const bool kept = n >= keep_lo && n <= keep_hi;
      const double lb = log_bound(n);
      if (!kept && lb < log_cut && log_bound(n + dir) < lb) break;
      add(n);
      n += dir;
    }
    // Majorants decay at least geometrically from here on.
    double acc = 0.0;
    for (long m = n; m != n + 400 * dir; m += dir) {
      const double lb = log_bound(m);
      if (lb < -740.0) break;
      const double b = std::exp(lb);
      acc += b;
      if (b < 1e-20 * acc) break;
    }
    out.tail += acc;
  }
  return out;
}

inline double roundoff(double abs_sum, long terms) {
  return 8.0 * kEps * abs_sum * (1.0 + 0.01 * static_cast<double>(terms));
}

}  // namespace mockq::detail
