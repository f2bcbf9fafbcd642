#include "euler_spectra/common.hpp"

#include <string>

namespace euler_spectra {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::degenerate_slice: return "DegenerateSlice";
    case ErrorCode::not_admissible: return "NotAdmissible";
    case ErrorCode::essential_spectrum: return "EssentialSpectrum";
    case ErrorCode::contraction_failure: return "ContractionFailure";
    case ErrorCode::sector_violation: return "SectorViolation";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::singular_factorization: return "SingularFactorization";
    case ErrorCode::block_mismatch: return "BlockMismatch";
    case ErrorCode::identity_violation: return "IdentityViolation";
    case ErrorCode::bracket_failure: return "BracketFailure";
    case ErrorCode::boundary_zero: return "BoundaryZero";
    case ErrorCode::index_out_of_window: return "IndexOutOfWindow";
    case ErrorCode::large_residual: return "LargeResidual";
    case ErrorCode::precondition: return "PreconditionFailed";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw SpectralError(code, std::string(to_string(code)) + ": " + message);
}

cplx IndexedSequence::at(long n) const {
  if (!contains(n)) {
    fail(ErrorCode::index_out_of_window,
         "index " + std::to_string(n) + " outside [" + std::to_string(first_) + ", " +
             std::to_string(last()) + "]");
  }
  return values_[static_cast<std::size_t>(n - first_)];
}

cplx& IndexedSequence::at(long n) {
  if (!contains(n)) {
    fail(ErrorCode::index_out_of_window,
         "index " + std::to_string(n) + " outside [" + std::to_string(first_) + ", " +
             std::to_string(last()) + "]");
  }
  return values_[static_cast<std::size_t>(n - first_)];
}

void IndexedSequence::extend_to(long n) {
  if (values_.empty()) {
    first_ = n;
    values_.assign(1, cplx{});
    return;
  }
  if (n < first_) {
    values_.insert(values_.begin(), static_cast<std::size_t>(first_ - n), cplx{});
    first_ = n;
  } else if (n > last()) {
    values_.resize(static_cast<std::size_t>(n - first_ + 1), cplx{});
  }
}

}  // namespace euler_spectra
