#include <doctest.h>

#include "euler_spectra/contfrac.hpp"
#include "support.hpp"

using namespace euler_spectra;
using test_support::reference;
using test_support::rel;

namespace {

// k-th convergent by the forward Wallis recurrence A_k = b_k A_{k-1} + A_{k-2}.
cplx wallis(Side side, cplx lambda, const CoefficientSequence& c, long depth) {
  cplx A_prev = 1.0, A = 0.0, B_prev = 0.0, B = 1.0;
  for (long k = 1; k <= depth; ++k) {
    const cplx bk = lambda / c.rho(sign_of(side) * k);
    const cplx A_next = bk * A + A_prev, B_next = bk * B + B_prev;
    A_prev = A;
    A = A_next;
    B_prev = B;
    B = B_next;
  }
  return A / B;
}

}  // namespace

TEST_CASE("free lattice: g = mu+") {
  const auto free = CoefficientSequence::free_lattice();
  for (Side s : {Side::plus, Side::minus}) {
    const auto v = continued_fraction(s, 1.5, free);
    CHECK(std::abs(v.value - 0.5) < 1e-14);
    const auto w = continued_fraction(s, cplx(1.0, 0.7), free);
    CHECK(std::abs(w.value - multipliers(cplx(1.0, 0.7)).mu_plus) < 1e-13);
  }
}

TEST_CASE("backward evaluation equals the forward Wallis recurrence") {
  const auto& c = reference();
  for (cplx l : {cplx(0.3), cplx(1.0), cplx(2.0, 1.5)}) {
    for (Side s : {Side::plus, Side::minus}) {
      for (long d : {1L, 2L, 7L, 40L}) CHECK(rel(convergent(s, l, c, d), wallis(s, l, c, d)) < 1e-13);
    }
  }
}

TEST_CASE("limits at small and large lambda") {
  const auto& c = reference();
  for (Side s : {Side::plus, Side::minus}) {
    const auto small = continued_fraction(s, 1e-4, c);
    CHECK(small.value.real() > 1 - 1e-2);
    CHECK(small.value.real() < 1 + 1e-2);
    CHECK(std::abs(continued_fraction(s, 1e4, c).value) <= 1e-3);
  }
}

TEST_CASE("sector guard") {
  const auto& c = reference();
  for (cplx l : {cplx(-1.0), cplx(0.0, 3.0), cplx(1e-6, 3.0), cplx(0.0)}) {
    try {
      continued_fraction(Side::plus, l, c);
      FAIL("expected SectorViolation");
    } catch (const SpectralError& e) {
      CHECK(e.code() == ErrorCode::sector_violation);
    }
  }
  CHECK_THROWS_AS(g_function(-1.0, c), SpectralError);
  CHECK_NOTHROW(check_sector(cplx(1.0, 1.0), 1e-3));
}

TEST_CASE("general coefficients carry no fraction") {
  CHECK_THROWS_AS(continued_fraction(Side::plus, 1.0, test_support::general_zero()), SpectralError);
}

TEST_CASE("G in the free case") {
  const auto free = CoefficientSequence::free_lattice();
  const auto md = multipliers(1.5);
  CHECK(std::abs(1.5 + 2.0 * md.mu_plus - md.gap()) < 1e-15);
  for (cplx l : {cplx(1.5), cplx(0.7), cplx(3.0), cplx(1.0, 1.0)}) {
    CHECK(std::abs(g_function(l, free).value - 1.0) < 1e-12);
  }
}

TEST_CASE("G = F on the admissible config") {
  const auto& c = reference();
  for (cplx l : {cplx(1.0), cplx(0.5, 0.5), cplx(2.0, -1.0)}) {
    CHECK(rel(g_function(l, c).value, jost_function(l, c)) < 1e-7);
  }
}

TEST_CASE("ratio identities") {
  const auto& c = reference();
  for (double l : {0.5, 1.0, 2.0}) {
    const auto rep = ratio_identity_check(l, c);
    CHECK(rep.pass);
    CHECK(rep.plus_residual <= 1e-8);
    CHECK(rep.minus_residual <= 1e-8);
    CHECK(rep.recurrence_residual <= 1e-8);
  }
  const auto free = CoefficientSequence::free_lattice();
  const auto rep = ratio_identity_check(1.5, free);
  CHECK(rep.pass);
  CHECK(std::abs(rep.v0_plus - 2.0) < 1e-13);
  CHECK(std::abs(rep.cf_plus - 2.0) < 1e-13);
  CHECK(std::abs(rep.v0_minus + 0.5) < 1e-13);
  CHECK(std::abs(rep.cf_minus + 0.5) < 1e-13);
}

TEST_CASE("property: depth doubling stability") {
  const auto& c = reference();
  ContinuedFractionOptions o;
  for (cplx l : {cplx(0.1), cplx(1.0), cplx(3.0, 2.0)}) {
    for (Side s : {Side::plus, Side::minus}) {
      const auto v = continued_fraction(s, l, c, o);
      const cplx at_d = convergent(s, l, c, v.depth);
      const cplx at_2d = convergent(s, l, c, 2 * v.depth);
      CHECK(std::abs(at_d - at_2d) <= 10 * o.tol * std::max(1.0, std::abs(at_d)));
    }
  }
}

TEST_CASE("property: g > 0 and convergents bracket monotonically for real lambda > 0") {
  const auto& c = reference();
  for (double l : {1e-3, 0.05, 0.5, 1.0, 4.0, 50.0}) {
    for (Side s : {Side::plus, Side::minus}) {
      const auto v = continued_fraction(s, l, c);
      CHECK(v.value.real() > 0.0);
      CHECK(v.value.imag() == 0.0);
      REQUIRE(v.bracket.has_value());
      const double lo = std::min(v.bracket->first, v.bracket->second);
      const double hi = std::max(v.bracket->first, v.bracket->second);
      CHECK(v.value.real() >= lo - 1e-15);
      CHECK(v.value.real() <= hi + 1e-15);

      std::vector<double> conv;
      for (long d = 1; d <= 60; ++d) conv.push_back(convergent(s, l, c, d).real());
      // odd depths from above, even depths from below (first convergent 1/b_1 is the largest)
      for (std::size_t k = 2; k < conv.size(); ++k) {
        if (k % 2 == 0) CHECK(conv[k] <= conv[k - 2] * (1 + 1e-15));  // depth k+1 odd
        else CHECK(conv[k] >= conv[k - 2] * (1 - 1e-15));
      }
      // never crossing: every odd-depth convergent stays above the deepest even one
      for (std::size_t k = 0; k < conv.size(); k += 2) CHECK(conv[k] >= conv.back() * (1 - 1e-15));
      CHECK(*std::min_element(conv.begin(), conv.end()) > 0.0);
    }
  }
}
