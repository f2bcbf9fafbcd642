#include "euler_spectra/evans.hpp"

#include <algorithm>

namespace euler_spectra {

Mat2 MatrixJostPair::Ytilde0_plus() const {
  Mat2 out = Mat2::Zero();
  out.col(0) = ytilde_plus.front();
  return out;
}

Mat2 MatrixJostPair::Ytilde0_minus() const {
  Mat2 out = Mat2::Zero();
  out.col(1) = ytilde_minus.front();
  return out;
}

Vec2 MatrixJostPair::reconstructed(Side side, long n) const {
  const long index = side == Side::plus ? n : -n;
  const auto& column = side == Side::plus ? ytilde_plus : ytilde_minus;
  if (index < 0 || index > window) {
    fail(ErrorCode::index_out_of_window, "matrix Jost column not stored at n = " + std::to_string(n));
  }
  const cplx mu = side == Side::plus ? md.mu_plus : md.mu_minus;
  return md.W * column[static_cast<std::size_t>(index)] / mu;
}

MatrixJostPair solve_matrix_jost(cplx lambda, const CoefficientSequence& coeffs,
                                 const JostOptions& options) {
  MatrixJostPair pair;
  pair.lambda = lambda;
  pair.md = multipliers(lambda, options.eps_ess);
  const MultiplierData& md = pair.md;
  pair.n_tail = choose_n_tail(md, coeffs, options);
  check_contraction(md, coeffs, pair.n_tail);
  pair.window = std::min(options.window, pair.n_tail - 1);

  const long N = pair.n_tail;
  const cplx r = md.ratio();
  Mat2 A_tilde_inv = Mat2::Zero();
  A_tilde_inv(0, 0) = 1.0 / md.mu_plus;
  A_tilde_inv(1, 1) = 1.0 / md.mu_minus;
  const Mat2 X = A_tilde_inv * md.M;
  if ((X * X).norm() > 1e-12 * std::max(1.0, X.squaredNorm())) {
    fail(ErrorCode::identity_violation, "Ã⁻¹M is not nilpotent; diagonal term cannot be inverted exactly");
  }

  // + side: ŷ_n + b_n c_n X ŷ_n = e1 - U(n), U(n) = Σ_{k>n} b_k c_k diag(1, r^{k-n}) X ŷ_k.
  {
    const Vec2 e1(1.0, 0.0);
    const cplx plain = coeffs.tail_coupling_sum(Side::plus, N, lambda);
    const cplx geometric = coeffs.tail_geometric_sum(Side::plus, N, lambda, r);
    Vec2 U(X(0, 0) * plain, X(1, 0) * r * geometric);
    pair.ytilde_plus.assign(static_cast<std::size_t>(pair.window + 1), Vec2::Zero());
    for (long n = N - 1; n >= 0; --n) {
      const cplx bc = coeffs.coupling(n, lambda);
      const Vec2 yhat = (Mat2::Identity() - bc * X) * (e1 - U);
      if (n <= pair.window) {
        pair.ytilde_plus[static_cast<std::size_t>(n)] = integer_power(md.mu_plus, n) * yhat;
      }
      U += bc * (X * yhat);
      U(1) *= r;
    }
  }
  // - side: ŷ_n = e2 + V(n), V(n) = Σ_{k<n} b_k c_k diag(r^{n-k}, 1) X ŷ_k.
  {
    const Vec2 e2(0.0, 1.0);
    const cplx plain = coeffs.tail_coupling_sum(Side::minus, N, lambda);
    const cplx geometric = coeffs.tail_geometric_sum(Side::minus, N, lambda, r);
    Vec2 V(X(0, 1) * r * geometric, X(1, 1) * plain);
    pair.ytilde_minus.assign(static_cast<std::size_t>(pair.window + 1), Vec2::Zero());
    for (long n = -N + 1; n <= 0; ++n) {
      const Vec2 yhat = e2 + V;
      if (-n <= pair.window) {
        pair.ytilde_minus[static_cast<std::size_t>(-n)] = integer_power(md.mu_minus, n) * yhat;
      }
      const cplx bc = coeffs.coupling(n, lambda);
      V += bc * (X * yhat);
      V(0) *= r;
    }
  }

  pair.Y0_plus = md.W * pair.Ytilde0_plus() * md.W_inv;
  pair.Y0_minus = md.W * pair.Ytilde0_minus() * md.W_inv;
  return pair;
}

cplx evans_function(const MatrixJostPair& pair) {
  return (pair.Y0_plus + pair.Y0_minus).determinant();
}

cplx evans_function(cplx lambda, const CoefficientSequence& coeffs, const JostOptions& options) {
  return evans_function(solve_matrix_jost(lambda, coeffs, options));
}

cplx evans_from_scalar(const JostPair& pair) {
  const auto& md = pair.md;
  const cplx minor = pair.z_plus.at(0) * pair.z_minus.at(-1) - pair.z_minus.at(0) * pair.z_plus.at(-1);
  return md.mu_plus * md.mu_minus / md.W.determinant() * minor;
}

}  // namespace euler_spectra
