#ifndef EULER_SPECTRA_MULTIPLIERS_HPP
#define EULER_SPECTRA_MULTIPLIERS_HPP

#include <Eigen/Dense>

#include "euler_spectra/common.hpp"

namespace euler_spectra {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kDefaultEssentialTolerance = 1e-8;

// z^m by repeated squaring; negative m inverts.
cplx integer_power(cplx z, long m);

// Euclidean distance from λ to the essential spectrum [-2i, 2i].
double distance_to_essential(cplx lambda);

struct SpectralPoint {
  cplx lambda;
  double dist_essential = 0.0;
};

// Admits λ or throws EssentialSpectrum.
SpectralPoint admit(cplx lambda, double eps_ess = kDefaultEssentialTolerance);

// Roots of μ² + λμ - 1 = 0 labelled so that |μ_+| < 1 < |μ_-|, together with the
// constant transfer matrix A(λ) and its diagonalization.
struct MultiplierData {
  cplx lambda;
  cplx mu_plus;
  cplx mu_minus;
  Mat2 A;      // [[-λ, 1], [1, 0]]
  Mat2 W;      // columns are eigenvectors (μ_±, 1)
  Mat2 W_inv;
  Mat2 M;      // W⁻¹ Q_+ W
  Mat2 P_plus, P_minus;  // Riesz projections of A
  Mat2 Q_plus, Q_minus;  // coordinate projections

  cplx gap() const { return mu_plus - mu_minus; }
  // μ_+ / μ_-, of modulus |μ_+|² < 1.
  cplx ratio() const { return mu_plus / mu_minus; }
  // Upper bound on |h(n)| over n >= 0.
  double h_bound() const { return 2.0 / std::abs(gap()); }
};

MultiplierData multipliers(cplx lambda, double eps_ess = kDefaultEssentialTolerance);

// h(n) = ((μ_+/μ_-)^n - 1) / (μ_+ - μ_-), the kernel of the rescaled Jost equations.
cplx h_kernel(const MultiplierData& md, long n);

// A^m P_± = W diag(μ_+^m, μ_-^m) Q_± W⁻¹, valid for negative m as well.
Mat2 power_times_projection(const MultiplierData& md, long m, Side side);

}  // namespace euler_spectra

#endif
