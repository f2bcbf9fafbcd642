#ifndef EULER_SPECTRA_SPECTRUM_HPP
#define EULER_SPECTRA_SPECTRUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "euler_spectra/contfrac.hpp"
#include "euler_spectra/evans.hpp"
#include "euler_spectra/fredholm.hpp"
#include "euler_spectra/jost.hpp"

namespace euler_spectra {

struct EvaluationOptions {
  long fredholm_n = 256;      // sections at N/2, N, 2N
  bool compute_det_t = true;  // det(I - T) costs ~8x det(I - K)
  double cross_tol = 1e-6;
  JostOptions jost;
  ContinuedFractionOptions cf;
};

struct FiveFunctionRecord {
  cplx lambda;
  cplx det_K;                   // extrapolated
  std::optional<cplx> det_T;    // extrapolated
  cplx evans;
  cplx jost;
  std::optional<cplx> g_fun;    // needs ρ and the convergence sector
  long N_used = 0;
  long N_tail_used = 0;
  long depth_used = 0;
  double max_pairwise_gap = 0.0;
  double min_pivot = 0.0;

  std::vector<std::pair<std::string, cplx>> available() const;
};

// |a - b| / max(|a|, |b|), maximized over all pairs; 0 when fewer than two values.
double max_pairwise_gap(const std::vector<cplx>& values);

FiveFunctionRecord evaluate_all(cplx lambda, const CoefficientSequence& coeffs,
                                const EvaluationOptions& options = {});

// Median of |E| at λ ± radius, λ ± i radius (points on the segment are skipped).
double evans_scale(cplx lambda, const CoefficientSequence& coeffs, double radius = 0.25,
                   const JostOptions& options = {});

struct WindingResult {
  int winding = 0;
  double raw = 0.0;             // total phase change / 2π before rounding
  double min_abs_boundary = 0.0;
  std::size_t samples = 0;      // after refinement
};

// Zeros of E inside the rectangle [lo.re, hi.re] × [lo.im, hi.im], counted by the change of
// arg E along the counter-clockwise boundary. Sample gaps are halved until every phase step
// is below π/2. Throws BoundaryZero if |E| < 1e-8 on the boundary and EssentialSpectrum if
// the rectangle reaches the segment.
WindingResult winding_number(const CoefficientSequence& coeffs, cplx lo, cplx hi,
                             int samples_per_side = 32, const JostOptions& options = {});

struct RefineResult {
  cplx lambda;
  cplx value;                   // E at lambda
  double scale = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string detail;
};

// Secant iteration on E from `seed` until |E| <= 1e-10 scale or the step is <= 1e-12. Never
// throws for divergence: a failed run returns the best iterate with converged = false.
RefineResult refine_zero(const CoefficientSequence& coeffs, cplx seed, double trust_radius = 0.5,
                         int max_iterations = 100, const JostOptions& options = {});

// det(λ I - M_N), M_N the [-N, N] section of (S - S*) diag(ρ_n), as mantissa · 2^exponent.
struct ScaledValue {
  double mantissa = 0.0;
  long exponent = 0;
  double value() const;
};
ScaledValue finite_section_charpoly(const CoefficientSequence& coeffs, long N, double lambda);

// Positive real roots of the section's characteristic polynomial in (0, lambda_max], by a
// uniform sign-change scan and bisection. Ascending order.
std::vector<double> finite_section_oracle(const CoefficientSequence& coeffs, long N,
                                          double lambda_max = 10.0, long scan_steps = 20000);

struct Eigensequence {
  cplx lambda;
  IndexedSequence w;            // ‖w‖ = 1 on the window
  double residual = 0.0;        // relative ℓ² residual of ρ_{n-1} w_{n-1} - ρ_{n+1} w_{n+1} = λ w_n
  double proportionality_defect = 0.0;
  long window = 0;
};

// z^+ on n >= 0 and the matching multiple of z^- on n < 0, w = z/ρ. Throws LargeResidual
// above `max_residual`.
Eigensequence eigensequence(const CoefficientSequence& coeffs, cplx lambda, long window = 32,
                            double max_residual = 1e-6, const JostOptions& options = {});

struct EigenvalueResult {
  cplx lambda_star;
  std::string method;           // real_bisection, argument_principle+refine, oracle
  FiveFunctionRecord five_values;
  Eigensequence sequence;
  double residual = 0.0;
  std::optional<int> winding;
  double phi_at_star = 0.0;
  int bisection_steps = 0;
  double scale = 0.0;             // median |E| around λ*
  double max_scaled_value = 0.0;  // max over the five values of |value| / scale
};

struct BisectionOptions {
  double lambda_min = 1e-4;
  double lambda_cap = 1e6;
  // Bisection stops once |φ| <= phi_tol or the bracket is narrower than width_tol. A residual
  // |φ| ~ 1e-10 still leaves z^+ and z^- visibly non-proportional at |n| ~ 30, so the default
  // runs to the width limit.
  double phi_tol = 1e-14;
  double width_tol = 1e-12;
  ContinuedFractionOptions cf;
};

// λ* > 0 with φ(λ*) = λ*/ρ_0 + g_+(λ*) + g_-(λ*) = 0. Needs ρ_0 < 0 (Precondition otherwise);
// BracketFailure if no sign change is found.
EigenvalueResult find_real_eigenvalue(const CoefficientSequence& coeffs, const BisectionOptions& bisection = {},
                                      const EvaluationOptions& evaluation = {});

}  // namespace euler_spectra

#endif
