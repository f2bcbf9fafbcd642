#ifndef EULER_SPECTRA_JOST_HPP
#define EULER_SPECTRA_JOST_HPP

#include <string>

#include "euler_spectra/common.hpp"
#include "euler_spectra/lattice_flow.hpp"
#include "euler_spectra/multipliers.hpp"

namespace euler_spectra {

struct JostOptions {
  long n_tail = 0;              // 0 selects N_tail automatically
  double tail_target = 1e-5;    // automatic N_tail: Σ_{|k|>=N}|b_k c_k| sup|h| below this
  long n_tail_min = 1024;
  long n_tail_cap = 1'000'000;
  long window = 32;             // z^± are propagated over [-window, window]
  double eps_ess = kDefaultEssentialTolerance;
};

// Size of the neglected tail, Σ_{±k>=N}|b_k c_k| · sup|h|, for one side.
double tail_size(const MultiplierData& md, const CoefficientSequence& coeffs, Side side, long N);

// Automatic truncation index: first N (doubling from n_tail_min) whose tail is below the
// target on both sides; finitely supported coefficients get N = support + 1.
long choose_n_tail(const MultiplierData& md, const CoefficientSequence& coeffs,
                   const JostOptions& options);

// Throws ContractionFailure when the tail sum is too large for the Volterra map to contract.
void check_contraction(const MultiplierData& md, const CoefficientSequence& coeffs, long n_tail);

// Normalized Jost solution ẑ^±_n = μ_±^{-n} z^±_n on [0, N] (plus) or [-N, 0] (minus).
//
// ẑ_n - 1 = Σ b_k c_k h(|k - n|) ẑ_k over k > n (plus) or k < n (minus). Since h(0) = 0 the
// system is strictly triangular and is solved by one substitution sweep; the kernel
// (r^m - 1)/(μ_+ - μ_-), r = μ_+/μ_-, splits into two running sums, so the sweep costs O(N).
// Sites beyond N contribute through their exact coupling sums with ẑ_k = 1 there, which
// leaves an error quadratic in the tail size.
IndexedSequence solve_jost_hat(Side side, const MultiplierData& md,
                               const CoefficientSequence& coeffs, long n_tail);

// Max-norm residual of the rescaled Volterra equation on the first `count` sites nearest 0,
// re-evaluated by direct summation over the full truncated range.
double jost_plugback_residual(Side side, const MultiplierData& md,
                              const CoefficientSequence& coeffs, const IndexedSequence& zhat,
                              long count);

// Extends a solution of z_{n-1} - z_{n+1} = (λ - b_n c_n) z_n to cover [lo, hi]. The input
// must hold at least two adjacent values.
IndexedSequence propagate(const IndexedSequence& z, cplx lambda, const CoefficientSequence& coeffs,
                          long lo, long hi);

// (-1)^{n-1} (u_{n-1} v_n - u_n v_{n-1}).
cplx wronskian(const IndexedSequence& u, const IndexedSequence& v, long n);

struct JostPair {
  cplx lambda;
  MultiplierData md;
  long n_tail = 0;
  double tail = 0.0;            // combined tail size of both sides
  IndexedSequence zhat_plus;    // [0, n_tail]
  IndexedSequence zhat_minus;   // [-n_tail, 0]
  IndexedSequence z_plus;       // [-window-1, window]
  IndexedSequence z_minus;      // [-window-1, window]
  cplx W0;
};

JostPair solve_jost_pair(cplx lambda, const CoefficientSequence& coeffs,
                         const JostOptions& options = {});

// W(z^+, z^-)_0 / (μ_- - μ_+); equals 1 for vanishing couplings.
cplx jost_function(const JostPair& pair);
cplx jost_function(cplx lambda, const CoefficientSequence& coeffs, const JostOptions& options = {});

struct NonvanishingReport {
  bool pass = false;
  double min_abs_zhat_plus = 0.0;   // over 0 <= n <= N
  double min_abs_zhat_minus = 0.0;  // over -N <= n <= 0
  double min_abs_z_plus = 0.0;      // over the propagated window
  double min_abs_z_minus = 0.0;
  bool ratios_positive_plus = false;   // v^+_n = z^+_{n-1}/z^+_n > 0 for 1 <= n <= N
  bool ratios_negative_minus = false;  // v^-_n < 0 for -N < n <= 0
  std::string detail;
};

// Checks z^±_n != 0 for ±n >= 0 and the sign pattern of the ratios v^±_n; requires real λ > 0.
NonvanishingReport check_nonvanishing(const JostPair& pair, long N);

}  // namespace euler_spectra

#endif
