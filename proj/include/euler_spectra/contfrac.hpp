#ifndef EULER_SPECTRA_CONTFRAC_HPP
#define EULER_SPECTRA_CONTFRAC_HPP

#include <optional>
#include <utility>
#include <vector>

#include "euler_spectra/jost.hpp"
#include "euler_spectra/lattice_flow.hpp"

namespace euler_spectra {

struct ContinuedFractionOptions {
  double tol = 1e-14;         // relative to max(1, |value|)
  double sector_margin = 1e-3;  // δ in |arg λ| <= π/2 - δ
  long initial_depth = 32;
  long depth_cap = 1'000'000;
};

struct ContinuedFractionValue {
  cplx value;
  long depth = 0;
  std::optional<std::pair<double, double>> bracket;  // real λ: consecutive convergents
  double est_error = 0.0;
};

// Throws SectorViolation unless Re λ > 0 and |arg λ| <= π/2 - δ.
void check_sector(cplx lambda, double sector_margin);

// Truncated fraction 1/(λ/ρ_{±1} + 1/(λ/ρ_{±2} + ... + 1/(λ/ρ_{±depth}))), evaluated from
// the bottom with a zero tail.
cplx convergent(Side side, cplx lambda, const CoefficientSequence& coeffs, long depth);

// g_±(λ): depth doubles until successive values agree to tol; for real λ the two
// consecutive convergents at the final depth also bracket the limit.
ContinuedFractionValue continued_fraction(Side side, cplx lambda, const CoefficientSequence& coeffs,
                                          const ContinuedFractionOptions& options = {});

// λ/ρ_0 + g_+(λ) + g_-(λ); its positive zeros are the positive eigenvalues.
double phi_function(double lambda, const CoefficientSequence& coeffs,
                    const ContinuedFractionOptions& options = {});

struct GValue {
  cplx value;
  cplx phi;  // λ/ρ_0 + g_+ + g_-
  ContinuedFractionValue g_plus;
  ContinuedFractionValue g_minus;
};

// z^+_0 z^-_0 (λ/ρ_0 + g_+ + g_-) / (μ_+ - μ_-); equals 1 for the free lattice.
GValue g_function(const JostPair& pair, const CoefficientSequence& coeffs,
                  const ContinuedFractionOptions& options = {});
GValue g_function(cplx lambda, const CoefficientSequence& coeffs,
                  const ContinuedFractionOptions& options = {}, const JostOptions& jost = {});

struct RatioIdentityReport {
  bool pass = false;
  cplx v0_plus, v0_minus;       // z^±_{-1} / z^±_0
  cplx cf_plus, cf_minus;       // λ/ρ_0 + g_+, -g_-
  double plus_residual = 0.0;
  double minus_residual = 0.0;
  double recurrence_residual = 0.0;  // v^+_n = λ/ρ_n + 1/v^+_{n+1}, v^-_{n+1} = -1/(λ/ρ_n - v^-_n)
  double tol = 0.0;
};

// Compares the Jost ratios at 0 with the continued fractions (real λ > 0) and checks the
// ratio recurrences on the propagated window. Throws IdentityViolation if `throw_on_fail`.
RatioIdentityReport ratio_identity_check(double lambda, const CoefficientSequence& coeffs,
                                         double tol = 1e-8, bool throw_on_fail = false,
                                         const ContinuedFractionOptions& options = {},
                                         const JostOptions& jost = {});

}  // namespace euler_spectra

#endif
