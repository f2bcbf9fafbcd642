#ifndef EULER_SPECTRA_VERIFY_HPP
#define EULER_SPECTRA_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "euler_spectra/spectrum.hpp"

namespace euler_spectra {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;       // measured quantity (gap, residual, ...)
  double tol = 0.0;
  std::string detail;
  std::optional<ErrorCode> error;  // set when the check aborted with a SpectralError
};

struct VerifyOptions {
  EvaluationOptions evaluation;  // jost.n_tail, fredholm_n, cross_tol are honored
  long fredholm_n_quick = 64;    // block identity section
  bool spectral_search = true;   // bisection, winding, oracle (flow with ρ_0 < 0 only)
  std::optional<cplx> expected_eigenvalue;  // e.g. from a saved `find` report
};

// Runs the property checks that apply to the coefficient source: all five functions for ρ
// sources, the four-function subset for general coefficients. Never throws for a failing
// check; the failure is recorded instead.
std::vector<CheckResult> run_invariant_suite(const CoefficientSequence& coeffs, const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

// Exit status for a failed check set: 3 if any check stopped on a convergence-type error,
// otherwise 4.
int failure_exit_code(const std::vector<CheckResult>& results);

// Process exit status conventionally associated with an error code.
int exit_code_for(ErrorCode code);

}  // namespace euler_spectra

#endif
