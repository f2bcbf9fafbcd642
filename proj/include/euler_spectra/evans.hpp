#ifndef EULER_SPECTRA_EVANS_HPP
#define EULER_SPECTRA_EVANS_HPP

#include <vector>

#include "euler_spectra/jost.hpp"

namespace euler_spectra {

// Matrix Jost solutions in the frame diagonalizing A(λ). Only the nonzero column ỹ^±_n of
// Ỹ^±_n = W⁻¹ Y^±_n W is kept (first column for +, second for -).
struct MatrixJostPair {
  cplx lambda;
  MultiplierData md;
  long n_tail = 0;
  long window = 0;
  std::vector<Vec2> ytilde_plus;   // ỹ^+_n for 0 <= n <= window
  std::vector<Vec2> ytilde_minus;  // ỹ^-_{-n} for 0 <= n <= window
  Mat2 Y0_plus;
  Mat2 Y0_minus;

  Mat2 Ytilde0_plus() const;
  Mat2 Ytilde0_minus() const;
  // (μ_±)⁻¹ W ỹ^±_n, which should equal (z^±_n, z^±_{n-1}).
  Vec2 reconstructed(Side side, long n) const;
};

// Solves the rescaled systems ŷ_n = μ_±^{-n} ỹ_n by one substitution sweep. On the + side
// the k = n term enters through X = Ã⁻¹M, which is nilpotent (rank one, trace zero), so
// (I + b_n c_n X)⁻¹ = I - b_n c_n X is exact. Sites beyond N_tail are frozen at the free
// solution and contribute through the coefficient tail sums.
MatrixJostPair solve_matrix_jost(cplx lambda, const CoefficientSequence& coeffs,
                                 const JostOptions& options = {});

// det(Y^+_0 + Y^-_0).
cplx evans_function(const MatrixJostPair& pair);
cplx evans_function(cplx lambda, const CoefficientSequence& coeffs, const JostOptions& options = {});

// The same determinant through the scalar Jost values:
// μ_+ μ_- / det W · (z^+_0 z^-_{-1} - z^-_0 z^+_{-1}).
cplx evans_from_scalar(const JostPair& pair);

}  // namespace euler_spectra

#endif
