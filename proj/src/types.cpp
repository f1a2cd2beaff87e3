#include "mockq/types.hpp"

#include <cmath>
#include <sstream>

namespace mockq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kImTooSmall: return "ImTooSmall";
    case ErrorKind::kSingularInput: return "SingularInput";
    case ErrorKind::kSingularDenominator: return "SingularDenominator";
    case ErrorKind::kDivergentModulus: return "DivergentModulus";
    case ErrorKind::kQuadratureFailure: return "QuadratureFailure";
    case ErrorKind::kReductionOverflow: return "ReductionOverflow";
    case ErrorKind::kSingularEndpoint: return "SingularEndpoint";
    case ErrorKind::kNotInGroup: return "NotInGroup";
    case ErrorKind::kUnknownMembership: return "UnknownMembership";
    case ErrorKind::kSamplingFailure: return "SamplingFailure";
    case ErrorKind::kOverflow: return "Overflow";
    case ErrorKind::kNotInQuantumSet: return "NotInQuantumSet";
    case ErrorKind::kInconsistentArguments: return "InconsistentArguments";
    case ErrorKind::kUnknownSuite: return "UnknownSuite";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

UpperHalfPoint::UpperHalfPoint(double re_, double im_) : re(re_), im(im_) {
  if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
    std::ostringstream os;
    os << "tau = " << re << " + " << im << "i is not in the upper half-plane";
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
}

UpperHalfPoint::UpperHalfPoint(cplx tau) : UpperHalfPoint(tau.real(), tau.imag()) {}

void TruncationPolicy::validate() const {
  if (!(target_abs_err > 0.0) || !(target_abs_err < 1e-3) || max_terms <= 0 || !(min_im > 0.0) ||
      !(quad_rel_tol > 0.0) || quad_max_depth <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "truncation policy fields must be positive, target_abs_err < 1e-3");
  }
}

void require_im(const UpperHalfPoint& tau, const TruncationPolicy& policy, const char* who) {
  if (tau.im < policy.min_im) {
    std::ostringstream os;
    os << who << ": Im(tau) = " << tau.im << " below min_im = " << policy.min_im;
    throw Error(ErrorKind::kImTooSmall, os.str());
  }
}

}  // namespace mockq
