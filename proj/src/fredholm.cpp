#include "euler_spectra/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace euler_spectra {

cplx GreenKernel::scalar(long n, long k) const {
  const cplx mu = k >= n ? md_.mu_minus : md_.mu_plus;
  return -integer_power(mu, n - k) / md_.gap();
}

Mat2 GreenKernel::system(long n, long k) const {
  if (k >= n) return -power_times_projection(md_, n - k - 1, Side::minus);
  return power_times_projection(md_, n - k - 1, Side::plus);
}

namespace {

// Powers μ^m for 0 <= |m| <= 2N, stored so that entry m + 2N holds the power used by the
// kernel at offset n - k = m (μ_- for m <= 0, μ_+ for m > 0).
std::vector<cplx> kernel_powers(const MultiplierData& md, long N) {
  std::vector<cplx> powers(static_cast<std::size_t>(4 * N + 1));
  const cplx inv_mu_minus = 1.0 / md.mu_minus;
  cplx p = 1.0;
  for (long m = 0; m <= 2 * N; ++m, p *= inv_mu_minus) powers[static_cast<std::size_t>(2 * N - m)] = p;
  p = md.mu_plus;
  for (long m = 1; m <= 2 * N; ++m, p *= md.mu_plus) powers[static_cast<std::size_t>(2 * N + m)] = p;
  return powers;
}

}  // namespace

DenseMatrix build_K(cplx lambda, const CoefficientSequence& coeffs, long N, double eps_ess) {
  if (N < 0) fail(ErrorCode::invalid_input, "section half-width must be >= 0");
  const MultiplierData md = multipliers(lambda, eps_ess);
  const long size = 2 * N + 1;
  const auto powers = kernel_powers(md, N);
  std::vector<cplx> b(static_cast<std::size_t>(size)), c(static_cast<std::size_t>(size));
  for (long i = 0; i < size; ++i) {
    b[static_cast<std::size_t>(i)] = coeffs.b(i - N, lambda);
    c[static_cast<std::size_t>(i)] = coeffs.c(i - N);
  }
  const cplx inv_gap = 1.0 / md.gap();
  DenseMatrix K(size, size);
  for (long j = 0; j < size; ++j) {
    for (long i = 0; i < size; ++i) {
      // -c_n G(n,k) b_k = c_n μ^{n-k} b_k / (μ_+ - μ_-)
      K(i, j) = c[static_cast<std::size_t>(i)] * powers[static_cast<std::size_t>(i - j + 2 * N)] *
                b[static_cast<std::size_t>(j)] * inv_gap;
    }
  }
  return K;
}

DenseMatrix build_T(cplx lambda, const CoefficientSequence& coeffs, long N, double eps_ess) {
  if (N < 0) fail(ErrorCode::invalid_input, "section half-width must be >= 0");
  const MultiplierData md = multipliers(lambda, eps_ess);
  const long size = 2 * N + 1;
  DenseMatrix T = DenseMatrix::Zero(2 * size, 2 * size);
  const Mat2& Q = md.Q_plus;

  // A^{m} P_± only depends on m = n - k - 1; cache both families.
  std::vector<Mat2> plus_blocks(static_cast<std::size_t>(2 * size)), minus_blocks(static_cast<std::size_t>(2 * size));
  for (long m = -size; m < size; ++m) {
    const auto idx = static_cast<std::size_t>(m + size);
    plus_blocks[idx] = power_times_projection(md, m, Side::plus);
    minus_blocks[idx] = -power_times_projection(md, m, Side::minus);
  }
  for (long kk = 0; kk < size; ++kk) {
    const Mat2 B = coeffs.b(kk - N, lambda) * Q;
    for (long nn = 0; nn < size; ++nn) {
      const Mat2 C = coeffs.c(nn - N) * Q;
      const auto idx = static_cast<std::size_t>(nn - kk - 1 + size);
      const Mat2& G = kk >= nn ? minus_blocks[idx] : plus_blocks[idx];
      T.block<2, 2>(2 * nn, 2 * kk) = C * G * B;
    }
  }
  return T;
}

DeterminantResult det_identity_minus(const DenseMatrix& matrix) {
  DenseMatrix I_minus = -matrix;
  I_minus.diagonal().array() += 1.0;
  const Eigen::PartialPivLU<DenseMatrix> lu(I_minus);
  const auto& factors = lu.matrixLU();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < factors.rows(); ++i) {
    min_pivot = std::min(min_pivot, std::abs(factors(i, i)));
  }
  if (factors.rows() == 0) min_pivot = 1.0;
  if (!(min_pivot > 0.0) || !std::isfinite(min_pivot)) {
    std::ostringstream out;
    out << "LU of I - K produced pivot of magnitude " << min_pivot;
    fail(ErrorCode::singular_factorization, out.str());
  }
  return {lu.determinant(), min_pivot};
}

cplx det_pencil(cplx lambda, const CoefficientSequence& coeffs, long N, double eps_ess) {
  return det_identity_minus(build_K(lambda, coeffs, N, eps_ess)).value;
}

BlockReport build_T_and_check(cplx lambda, const CoefficientSequence& coeffs, long N, double eps_ess) {
  const DenseMatrix K = build_K(lambda, coeffs, N, eps_ess);
  const DenseMatrix T = build_T(lambda, coeffs, N, eps_ess);
  BlockReport report;
  report.N = N;
  const long size = 2 * N + 1;
  for (long kk = 0; kk < size; ++kk) {
    for (long nn = 0; nn < size; ++nn) {
      const auto block = T.block<2, 2>(2 * nn, 2 * kk);
      report.max_off_block = std::max({report.max_off_block, std::abs(block(0, 1)),
                                       std::abs(block(1, 0)), std::abs(block(1, 1))});
      const cplx k_entry = K(nn, kk);
      report.max_k_mismatch = std::max(report.max_k_mismatch,
                                       std::abs(block(0, 0) - k_entry) / std::max(1.0, std::abs(k_entry)));
    }
  }
  if (report.max_off_block > 1e-14 || report.max_k_mismatch > 1e-13) {
    std::ostringstream out;
    out << "T_N is not K_N in its (1,1) positions: off-block " << report.max_off_block
        << ", mismatch " << report.max_k_mismatch;
    fail(ErrorCode::block_mismatch, out.str());
  }
  report.det_K = det_identity_minus(K).value;
  report.det_T = det_identity_minus(T).value;
  return report;
}

namespace {

TruncatedPencil extrapolate(cplx lambda, long N, const std::function<DenseMatrix(long)>& build) {
  if (N < 2 || N % 2 != 0) fail(ErrorCode::invalid_input, "section half-width N must be even and >= 2");
  TruncatedPencil out;
  out.lambda = lambda;
  out.N = N;
  const auto half = det_identity_minus(build(N / 2));
  const auto coarse = det_identity_minus(build(N));
  const auto fine = det_identity_minus(build(2 * N));
  out.det_half = half.value;
  out.det_N = coarse.value;
  out.det_2N = fine.value;
  out.min_pivot = std::min({half.min_pivot, coarse.min_pivot, fine.min_pivot});
  out.extrapolated_first_order = richardson_first_order(out.det_N, out.det_2N);
  out.extrapolated = richardson_second_order(out.det_half, out.det_N, out.det_2N);
  out.convergence_order = std::log2(std::abs(out.det_half - out.det_N) / std::abs(out.det_N - out.det_2N));
  return out;
}

}  // namespace

TruncatedPencil truncated_pencil(cplx lambda, const CoefficientSequence& coeffs, long N, double eps_ess) {
  return extrapolate(lambda, N, [&](long n) { return build_K(lambda, coeffs, n, eps_ess); });
}

TruncatedPencil truncated_system_pencil(cplx lambda, const CoefficientSequence& coeffs, long N,
                                        double eps_ess) {
  return extrapolate(lambda, N, [&](long n) { return build_T(lambda, coeffs, n, eps_ess); });
}

}  // namespace euler_spectra
