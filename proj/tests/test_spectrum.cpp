#include <doctest.h>

#include <random>

#include "euler_spectra/spectrum.hpp"
#include "support.hpp"

using namespace euler_spectra;
using test_support::reference;
using test_support::rel;

namespace {

constexpr double kGoldenEigenvalue = 0.8467994030446;

const EigenvalueResult& found() {
  static const EigenvalueResult r = find_real_eigenvalue(reference());
  return r;
}

double star() { return found().lambda_star.real(); }

// det(λ I - M_N) by dense LU, M_N the [-N, N] section of (S - S*) diag(ρ).
double dense_charpoly(const CoefficientSequence& c, long N, double lambda) {
  const long size = 2 * N + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
  for (long i = 0; i < size; ++i) {
    const long n = i - N;
    if (i > 0) M(i, i - 1) = c.rho(n - 1);
    if (i + 1 < size) M(i, i + 1) = -c.rho(n + 1);
  }
  return (lambda * Eigen::MatrixXd::Identity(size, size) - M).determinant();
}

}  // namespace

TEST_CASE("phi changes sign between the small and large lambda limits") {
  const auto& c = reference();
  CHECK(phi_function(1e-4, c) > 0.0);
  CHECK(phi_function(1e3, c) < 0.0);
}

TEST_CASE("bisection eigenvalue") {
  const auto& r = found();
  CHECK(r.method == "real_bisection");
  CHECK(star() > 0.0);
  CHECK(star() == doctest::Approx(kGoldenEigenvalue).epsilon(1e-9 / kGoldenEigenvalue));
  CHECK(r.residual <= 1e-6);
  CHECK(std::abs(phi_function(star(), reference())) < 1e-10);
  CHECK(r.max_scaled_value <= 1e-5);
}

TEST_CASE("lambda* is a zero of E and F relative to their size nearby") {
  const auto& c = reference();
  std::vector<double> mags;
  double fmax = 0.0;
  for (double re : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (double im : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      mags.push_back(std::abs(evans_function(cplx(re, im), c)));
      fmax = std::max(fmax, std::abs(jost_function(cplx(re, im), c)));
    }
  }
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  CHECK(std::abs(evans_function(star(), c)) <= 1e-6 * mags[mags.size() / 2]);
  CHECK(std::abs(jost_function(star(), c)) <= 1e-6 * fmax);
}

TEST_CASE("precondition: rho_0 > 0 has no bracket") {
  try {
    find_real_eigenvalue(CoefficientSequence::free_lattice());
    FAIL("expected Precondition");
  } catch (const SpectralError& e) {
    CHECK(e.code() == ErrorCode::precondition);
  }
  CHECK_THROWS_AS(find_real_eigenvalue(test_support::general_zero()), SpectralError);
}

TEST_CASE("winding numbers") {
  const auto& c = reference();
  CHECK(winding_number(c, {0.1, -1.0}, {3.0, 1.0}).winding == 1);
  const auto far = winding_number(c, {10.0, -0.5}, {11.0, 0.5});
  CHECK(far.winding == 0);
  CHECK(std::abs(far.raw) < 1e-6);
  // reflected rectangles give the same count (a single real zero)
  CHECK(winding_number(c, {0.5, -0.3}, {2.0, 0.8}).winding == 1);
  CHECK(winding_number(c, {0.5, -0.8}, {2.0, 0.3}).winding == 1);
  CHECK(winding_number(c, {1.0, -0.5}, {2.0, 0.5}).winding == 0);
  CHECK_THROWS_AS(winding_number(c, {-1.0, -1.0}, {1.0, 1.0}), SpectralError);
}

TEST_CASE("E tends to the product of 1/rho_n for large lambda") {
  const auto& c = reference();
  // infinite product from the closed form; the factors approach 1 like 1/n²
  double product = 1.0 / test_support::reference_rho(0);
  for (long n = 1; n <= 2'000'000; ++n) product /= test_support::reference_rho(n) * test_support::reference_rho(-n);
  double previous = std::numeric_limits<double>::infinity();
  for (double l : {10.0, 100.0, 1000.0}) {
    const double err = std::abs(evans_function(l, c) / product - 1.0);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-2);
  const auto w = winding_number(c, {10.0, -0.5}, {11.0, 0.5});
  CHECK(w.min_abs_boundary > 1.0);
}

TEST_CASE("property: large rectangle counts exactly the refined zeros") {
  const auto& c = reference();
  const auto w = winding_number(c, {0.01, -2.01}, {20.0, 2.01});
  CHECK(w.winding == 1);
  const auto ref = refine_zero(c, star());
  CHECK(ref.converged);
  CHECK(ref.lambda.real() > 0.01);
  CHECK(std::abs(ref.lambda.imag()) < 2.01);
}

TEST_CASE("refinement") {
  const auto& c = reference();
  const auto back = refine_zero(c, star() + 1e-3);
  CHECK(back.converged);
  CHECK(std::abs(back.lambda - star()) <= 1e-9);

  const auto fixed = refine_zero(c, star());
  CHECK(fixed.converged);
  CHECK(fixed.iterations <= 1);
  CHECK(std::abs(fixed.lambda - star()) <= 1e-8);

  const auto lost = refine_zero(c, cplx(40.0, 30.0));
  CHECK_FALSE(lost.converged);
}

TEST_CASE("finite-section charpoly equals the dense determinant") {
  const auto& c = reference();
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (long N = 1; N <= 12; ++N) {
    for (int t = 0; t < 4; ++t) {
      const double l = u(gen);
      const double a = finite_section_charpoly(c, N, l).value();
      const double b = dense_charpoly(c, N, l);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)));
    }
  }
  // rescaling keeps huge sections finite
  const auto big = finite_section_charpoly(c, 2000, 5.0);
  CHECK(std::isfinite(big.mantissa));
  CHECK(big.exponent > 1000);
}

TEST_CASE("finite-section oracle converges to lambda*") {
  const auto& c = reference();
  double previous = std::numeric_limits<double>::infinity();
  for (long N : {32L, 64L, 128L}) {
    const auto roots = finite_section_oracle(c, N);
    REQUIRE_FALSE(roots.empty());
    const double err = std::abs(roots.back() - star());
    CHECK(err <= previous + 1e-12);
    previous = err;
  }
  CHECK(previous <= 1e-4);
  CHECK(finite_section_oracle(CoefficientSequence::free_lattice(64), 32).empty());
}

TEST_CASE("eigensequence") {
  const auto& c = reference();
  const auto seq = eigensequence(c, star());
  CHECK(seq.residual <= 1e-6);
  CHECK(seq.proportionality_defect <= 1e-5);
  double wmax = 0.0, norm2 = 0.0;
  for (cplx v : seq.w.values()) {
    wmax = std::max(wmax, std::abs(v));
    norm2 += std::norm(v);
  }
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
  const double bound = 2.0 * std::pow(std::abs(multipliers(star()).mu_plus), double(seq.window)) * wmax;
  CHECK(std::abs(seq.w.at(seq.window)) <= bound);
  CHECK(std::abs(seq.w.at(-seq.window)) <= bound);

  try {
    eigensequence(c, star() + 0.1);
    FAIL("expected LargeResidual");
  } catch (const SpectralError& e) {
    CHECK(e.code() == ErrorCode::large_residual);
  }
}

TEST_CASE("property: bisection, refinement and oracle agree") {
  const auto& c = reference();
  const double a = star();
  const double b = refine_zero(c, a).lambda.real();
  const double o = finite_section_oracle(c, 128).back();
  CHECK(std::abs(a - b) <= 1e-4);
  CHECK(std::abs(a - o) <= 1e-4);
  CHECK(std::abs(b - o) <= 1e-4);
}

TEST_CASE("max pairwise gap") {
  CHECK(max_pairwise_gap({}) == 0.0);
  CHECK(max_pairwise_gap({cplx(2.0)}) == 0.0);
  CHECK(max_pairwise_gap({cplx(1.0), cplx(1.0), cplx(1.1)}) == doctest::Approx(0.1 / 1.1));
}

TEST_CASE("property: four functions agree where G is undefined") {
  const auto& c = reference();
  EvaluationOptions o;
  o.compute_det_t = false;
  for (cplx l : {cplx(-1.0, 0.5), cplx(-0.5, -1.0), cplx(-2.0, 0.0)}) {
    const auto rec = evaluate_all(l, c, o);
    CHECK_FALSE(rec.g_fun.has_value());
    CHECK(rec.max_pairwise_gap <= 1e-6);
  }
  const auto rec = evaluate_all(cplx(1.0, 0.5), c, o);
  CHECK(rec.g_fun.has_value());
  CHECK(rec.available().size() == 4);
  CHECK(rec.max_pairwise_gap <= 1e-6);
}
