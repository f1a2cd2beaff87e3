#include "mockq/report.hpp"

#include <cmath>
#include <limits>

namespace mockq {

void IdentityReport::record(double residual, const std::string& inputs) {
  if (!std::isfinite(residual)) {
    max_residual = std::numeric_limits<double>::infinity();
    failures.push_back({inputs, residual});
    return;
  }
  if (residual > max_residual) max_residual = residual;
  if (residual > tolerance) failures.push_back({inputs, residual});
}

void IdentityReport::record_error(const std::string& inputs, const std::string& what) {
  max_residual = std::numeric_limits<double>::infinity();
  failures.push_back({inputs + " error=" + what, std::numeric_limits<double>::infinity()});
}

}  // namespace mockq
