#include <doctest.h>

#include "euler_spectra/evans.hpp"
#include "euler_spectra/fredholm.hpp"
#include "support.hpp"

using namespace euler_spectra;
using test_support::reference;
using test_support::rel;

namespace {

// Dense inverse of the [-M, M] section of S - S* - λ, (S z)_n = z_{n-1}.
DenseMatrix dense_resolvent(cplx lambda, long M) {
  const long size = 2 * M + 1;
  DenseMatrix L = DenseMatrix::Zero(size, size);
  for (long i = 0; i < size; ++i) {
    L(i, i) = -lambda;
    if (i > 0) L(i, i - 1) = 1.0;
    if (i + 1 < size) L(i, i + 1) = -1.0;
  }
  return L.inverse();
}

}  // namespace

TEST_CASE("free case: K = 0, T = 0, determinants 1") {
  const auto free = CoefficientSequence::free_lattice();
  for (cplx l : {cplx(1.0), cplx(0.5, 2.0)}) {
    CHECK(build_K(l, free, 8).cwiseAbs().maxCoeff() == 0.0);
    CHECK(build_T(l, free, 8).cwiseAbs().maxCoeff() == 0.0);
    CHECK(det_pencil(l, free, 16) == cplx(1.0));
    const auto rep = build_T_and_check(l, free, 8);
    CHECK(rep.det_T == cplx(1.0));
    CHECK(rep.det_K == cplx(1.0));
  }
}

TEST_CASE("scalar Green kernel is the resolvent of S - S* - lambda") {
  const long M = 120;
  for (cplx l : {cplx(1.0), cplx(1.5, 0.5), cplx(-1.0, 0.5)}) {
    const GreenKernel G(multipliers(l));
    const DenseMatrix R = dense_resolvent(l, M);
    for (long n = -6; n <= 6; ++n) {
      for (long k = -6; k <= 6; ++k) CHECK(std::abs(G.scalar(n, k) - R(n + M, k + M)) < 1e-12);
    }
  }
}

TEST_CASE("K entries follow the closed form") {
  const auto& c = reference();
  const long N = 20;
  for (cplx l : {cplx(1.0), cplx(0.8, -0.9)}) {
    const auto md = multipliers(l);
    const DenseMatrix K = build_K(l, c, N);
    for (long n = -N; n <= N; n += 3) {
      for (long k = -N; k <= N; k += 2) {
        const cplx mu = k >= n ? md.mu_minus : md.mu_plus;
        const cplx expected = c.c(n) * std::pow(mu, double(n - k)) * c.b(k, l) / md.gap();
        CHECK(std::abs(K(n + N, k + N) - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
        // decay envelope
        CHECK(std::abs(K(n + N, k + N)) <=
              (1 + 1e-12) * std::pow(std::abs(md.mu_plus), double(std::abs(n - k))) * std::abs(c.b(k, l) * c.c(n)) /
                  std::abs(md.gap()));
      }
    }
  }
}

TEST_CASE("row sums of |K| are bounded uniformly in N") {
  const auto& c = reference();
  const auto md = multipliers(1.0);
  double bmax = 0.0, cmax = 0.0;
  for (long n = -600; n <= 600; ++n) {
    bmax = std::max(bmax, std::abs(c.b(n, 1.0)));
    cmax = std::max(cmax, std::abs(c.c(n)));
  }
  const double q = std::abs(md.mu_plus);
  const double bound = cmax * bmax * (1 + q) / (1 - q) / std::abs(md.gap());
  double previous = 0.0;
  for (long N : {32L, 64L, 128L, 256L}) {
    const double rows = build_K(1.0, c, N).cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(rows <= bound);
    CHECK(rows >= previous);
    previous = rows;
  }
}

TEST_CASE("kernel identity between the scalar and system Green kernels") {
  const GreenKernel G(multipliers(cplx(1.2, 0.4)));
  for (long n = -7; n <= 7; ++n) {
    for (long k = -7; k <= 7; ++k) CHECK(std::abs(G.system(n, k)(0, 0) + G.scalar(n, k)) < 1e-13);
  }
}

TEST_CASE("system kernel matches direct matrix powers") {
  const auto md = multipliers(1.0);
  const GreenKernel G(md);
  const Mat2 A_inv = md.A.inverse();
  for (long n = -4; n <= 4; ++n) {
    for (long k = -4; k <= 4; ++k) {
      const long m = n - k - 1;
      Mat2 power = Mat2::Identity();
      for (long j = 0; j < std::abs(m); ++j) power = power * (m >= 0 ? md.A : A_inv);
      const Mat2 expected = k >= n ? Mat2(-power * md.P_minus) : Mat2(power * md.P_plus);
      CHECK((G.system(n, k) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("block identity det(I - T_N) = det(I - K_N)") {
  const auto& c = reference();
  for (long N : {16L, 64L, 256L}) {
    const auto rep = build_T_and_check(1.0, c, N);
    CHECK(rel(rep.det_T, rep.det_K) < 1e-12);
    CHECK(rep.max_off_block == 0.0);
    CHECK(rep.max_k_mismatch < 1e-14);
  }
  const auto rep = build_T_and_check(cplx(-1.0, 0.5), c, 32);
  CHECK(rel(rep.det_T, rep.det_K) < 1e-12);
}

TEST_CASE("det_identity_minus on a singular section") {
  const DenseMatrix I = DenseMatrix::Identity(4, 4);
  try {
    det_identity_minus(I);
    FAIL("expected SingularFactorization");
  } catch (const SpectralError& e) {
    CHECK(e.code() == ErrorCode::singular_factorization);
  }
  DenseMatrix M = DenseMatrix::Zero(3, 3);
  M(0, 1) = 2.0;
  M(1, 0) = 0.5;
  // det [[1, -2], [-0.5, 1]] = 0
  CHECK_THROWS_AS(det_identity_minus(M), SpectralError);
  M(1, 0) = 0.25;
  CHECK(std::abs(det_identity_minus(M).value - 0.5) < 1e-15);
}

TEST_CASE("N doubling: first-order convergence and extrapolation to E") {
  const auto& c = reference();
  const cplx e = evans_function(1.0, c);
  const auto tp = truncated_pencil(1.0, c, 256);
  CHECK(tp.convergence_order >= 0.9);
  CHECK(rel(tp.extrapolated, e) <= 1e-6);
  CHECK(rel(tp.extrapolated_first_order, e) < rel(tp.det_2N, e));
  const auto ts = truncated_system_pencil(1.0, c, 64);
  const auto tk = truncated_pencil(1.0, c, 64);
  CHECK(rel(ts.extrapolated, tk.extrapolated) < 1e-11);
}

TEST_CASE("property: extrapolated determinants are N-stable") {
  const auto& c = reference();
  const auto a = truncated_pencil(cplx(1.5, 0.5), c, 256);
  const auto b = truncated_pencil(cplx(1.5, 0.5), c, 512);
  CHECK(rel(a.extrapolated, b.extrapolated) <= 1e-6);
}
