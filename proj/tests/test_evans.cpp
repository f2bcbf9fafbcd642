#include <doctest.h>

#include <numbers>

#include "euler_spectra/evans.hpp"
#include "euler_spectra/fredholm.hpp"
#include "support.hpp"

using namespace euler_spectra;
using test_support::reference;
using test_support::rel;

namespace {
double mat_err(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("free case: Y0 = P and E = 1") {
  const auto free = CoefficientSequence::free_lattice();
  for (cplx l : {cplx(0.7), cplx(1.5), cplx(1.0, 1.0), cplx(-1.0, -0.5)}) {
    const auto pair = solve_matrix_jost(l, free);
    CHECK(mat_err(pair.Y0_plus, pair.md.P_plus) < 1e-14);
    CHECK(mat_err(pair.Y0_minus, pair.md.P_minus) < 1e-14);
    CHECK(std::abs(evans_function(pair) - 1.0) < 1e-13);
  }
}

TEST_CASE("E agrees with the shooting oracle for finitely supported couplings") {
  for (unsigned seed = 11; seed <= 15; ++seed) {
    const auto coeffs = test_support::random_general(seed);
    for (cplx l : {cplx(1.0), cplx(0.4, 1.7), cplx(-1.2, -0.6)}) {
      CHECK(rel(evans_function(l, coeffs), test_support::shoot(coeffs, l, 4).F) < 1e-11);
    }
  }
}

TEST_CASE("reconstruction matches the scalar Jost solutions") {
  const auto& c = reference();
  JostOptions o;
  o.window = 8;
  const auto pair = solve_jost_pair(1.0, c, o);
  const auto mpair = solve_matrix_jost(1.0, c, o);
  for (long n = 0; n <= 8; ++n) {
    const Vec2 y = mpair.reconstructed(Side::plus, n);
    CHECK(rel(y(0), pair.z_plus.at(n)) < 1e-9);
    CHECK(rel(y(1), pair.z_plus.at(n - 1)) < 1e-9);
    const Vec2 ym = mpair.reconstructed(Side::minus, -n);
    CHECK(rel(ym(0), pair.z_minus.at(-n)) < 1e-9);
    CHECK(rel(ym(1), pair.z_minus.at(-n - 1)) < 1e-9);
  }
}

TEST_CASE("structure: Ytilde0+ has a zero second column, Ytilde0- a zero first column") {
  const auto& c = reference();
  for (cplx l : {cplx(1.0), cplx(0.5, -1.0)}) {
    const auto p = solve_matrix_jost(l, c);
    const Mat2 yp = p.Ytilde0_plus(), ym = p.Ytilde0_minus();
    CHECK(yp(0, 1) == cplx(0.0));
    CHECK(yp(1, 1) == cplx(0.0));
    CHECK(ym(0, 0) == cplx(0.0));
    CHECK(ym(1, 0) == cplx(0.0));
    CHECK(std::abs(p.Y0_plus.determinant()) < 1e-12 * p.Y0_plus.squaredNorm());
  }
}

TEST_CASE("lambda = 1: E = F and E = extrapolated det(I - K)") {
  const auto& c = reference();
  const cplx e = evans_function(1.0, c);
  CHECK(rel(e, jost_function(1.0, c)) < 1e-8);
  CHECK(rel(e, truncated_pencil(1.0, c, 256).extrapolated) < 1e-6);
}

TEST_CASE("property: direct determinant equals the scalar factorization") {
  const auto& c = reference();
  for (cplx l : {cplx(1.0), cplx(1.5, 0.5), cplx(-1.0, 0.5), cplx(0.5, -1.0), cplx(2.5, 1.0)}) {
    CHECK(rel(evans_function(l, c), evans_from_scalar(solve_jost_pair(l, c))) < 1e-10);
  }
}

TEST_CASE("property: tail doubling leaves E unchanged") {
  const auto& c = reference();
  const long N = choose_n_tail(multipliers(1.0), c, {});
  JostOptions a, b;
  a.n_tail = N;
  b.n_tail = 2 * N;
  for (cplx l : {cplx(1.0), cplx(1.5, 0.5)}) CHECK(rel(evans_function(l, c, a), evans_function(l, c, b)) < 1e-8);
}

TEST_CASE("property: Cauchy mean value and reflection") {
  const auto& c = reference();
  cplx mean = 0.0;
  for (int j = 0; j < 64; ++j) mean += evans_function(1.5 + 0.1 * std::polar(1.0, 2 * std::numbers::pi * j / 64), c);
  mean /= 64.0;
  CHECK(std::abs(mean - evans_function(1.5, c)) <= 1e-6);
  for (cplx l : {cplx(1.0, 0.3), cplx(-0.7, 1.1)}) {
    CHECK(rel(evans_function(std::conj(l), c), std::conj(evans_function(l, c))) < 1e-12);
  }
}
