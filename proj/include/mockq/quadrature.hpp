#pragma once

#include <functional>

#include "mockq/types.hpp"

namespace mockq {

struct QuadResult {
  cplx value{};
  double err_estimate = 0.0;
  long evals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued
/// function over [lo, hi]. The panel error is the embedded |K15 - G7|
/// difference. Stops once the summed estimate is below
/// max(abs_tol, rel_tol * |I|); throws QuadratureFailure if a panel would need
/// to be split beyond max_depth bisections with the tolerance still unmet.
QuadResult integrate_gk15(const std::function<cplx(double)>& f, double lo, double hi, double abs_tol,
                          double rel_tol, int max_depth);

}  // namespace mockq
