#ifndef EULER_SPECTRA_FREDHOLM_HPP
#define EULER_SPECTRA_FREDHOLM_HPP

#include <Eigen/Dense>

#include "euler_spectra/lattice_flow.hpp"
#include "euler_spectra/multipliers.hpp"

namespace euler_spectra {

using DenseMatrix = Eigen::MatrixXcd;

// Matrix elements of (S - S* - λ)⁻¹ (scalar) and (S* - A)⁻¹ (2×2 blocks) on ℓ²(ℤ).
class GreenKernel {
public:
  explicit GreenKernel(const MultiplierData& md) : md_(md) {}

  // -(μ_+ - μ_-)⁻¹ μ_-^{n-k} for k >= n, -(μ_+ - μ_-)⁻¹ μ_+^{n-k} for k < n.
  cplx scalar(long n, long k) const;
  // -A^{n-k-1} P_- for k >= n, A^{n-k-1} P_+ for k < n.
  Mat2 system(long n, long k) const;

  const MultiplierData& multipliers() const { return md_; }

private:
  MultiplierData md_;
};

// K_N[n, k] = -c_n G(n, k) b_k on [-N, N]; row/column i corresponds to n = i - N.
DenseMatrix build_K(cplx lambda, const CoefficientSequence& coeffs, long N,
                    double eps_ess = kDefaultEssentialTolerance);

// T_N with 2×2 blocks C_n G_sys(n, k) B_k, B_k = b_k Q_+, C_n = c_n Q_+; component (n, j)
// maps to row 2 (n + N) + j.
DenseMatrix build_T(cplx lambda, const CoefficientSequence& coeffs, long N,
                    double eps_ess = kDefaultEssentialTolerance);

struct DeterminantResult {
  cplx value;
  double min_pivot = 0.0;  // smallest |U_ii| of the partial-pivot LU
};

// det(I - matrix) by partial-pivot LU; throws SingularFactorization only on a zero or
// non-finite pivot.
DeterminantResult det_identity_minus(const DenseMatrix& matrix);

cplx det_pencil(cplx lambda, const CoefficientSequence& coeffs, long N,
                double eps_ess = kDefaultEssentialTolerance);

struct BlockReport {
  long N = 0;
  double max_off_block = 0.0;      // largest |entry| outside the (1,1) positions
  double max_k_mismatch = 0.0;     // largest |T_11 - K| relative to max(1, |K|)
  cplx det_T;
  cplx det_K;
};

// Materializes T_N, checks that it carries K_N in its (1,1) positions and nothing else, and
// returns both determinants. Throws BlockMismatch when the structure is violated.
BlockReport build_T_and_check(cplx lambda, const CoefficientSequence& coeffs, long N,
                              double eps_ess = kDefaultEssentialTolerance);

// Finite sections at N/2, N and 2N. The neglected coupling tail makes the error expand as
// a/N + b/N² + ..., so both the first-order (N, 2N) and the three-level estimate are kept;
// `extrapolated` is the three-level one.
struct TruncatedPencil {
  cplx lambda;
  long N = 0;
  cplx det_half;
  cplx det_N;
  cplx det_2N;
  cplx extrapolated;
  cplx extrapolated_first_order;
  double convergence_order = 0.0;  // log2 |d_{N/2} - d_N| / |d_N - d_2N|
  double min_pivot = 0.0;
};

inline cplx richardson_first_order(cplx coarse, cplx fine) { return 2.0 * fine - coarse; }
inline cplx richardson_second_order(cplx half, cplx coarse, cplx fine) {
  return (8.0 * fine - 6.0 * coarse + half) / 3.0;
}

// N must be even and >= 2.
TruncatedPencil truncated_pencil(cplx lambda, const CoefficientSequence& coeffs, long N,
                                 double eps_ess = kDefaultEssentialTolerance);

// Same construction for det(I - T_N), which is assembled and factored independently.
TruncatedPencil truncated_system_pencil(cplx lambda, const CoefficientSequence& coeffs, long N,
                                        double eps_ess = kDefaultEssentialTolerance);

}  // namespace euler_spectra

#endif
