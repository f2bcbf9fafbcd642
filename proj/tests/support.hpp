#ifndef EULER_SPECTRA_TESTS_SUPPORT_HPP
#define EULER_SPECTRA_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <random>

#include "euler_spectra/lattice_flow.hpp"
#include "euler_spectra/multipliers.hpp"

namespace test_support {

using euler_spectra::cplx;

// p = (2, 3), q = (2, -1): ρ_0 = -1.6, ρ_1 = 0.35, ρ_{-1} = 0.1875.
inline const euler_spectra::CoefficientSequence& reference() {
  static const auto coeffs = euler_spectra::make_coefficients(euler_spectra::FlowConfig::make({2, 3}, {2, -1}), 64);
  return coeffs;
}

// b ≡ c ≡ 0 through the general-coefficient path.
inline euler_spectra::CoefficientSequence general_zero(long window = 4) {
  const auto size = static_cast<std::size_t>(2 * window + 1);
  return euler_spectra::CoefficientSequence::general(window, {}, std::vector<cplx>(size), std::vector<cplx>(size), 0.0);
}

inline double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Closed-form ρ_n for p = (2, 3), q = (2, -1): ||q + n p||² = 5 + 2n + 13n².
inline double reference_rho(long n) { return 1.0 - 13.0 / (5.0 + 2.0 * n + 13.0 * n * n); }

// Finitely supported general coefficients b_n(λ) = b0_n + λ b1_n, c_n on [-window, window].
inline euler_spectra::CoefficientSequence random_general(unsigned seed, long window = 4, double size = 0.3) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-size, size);
  const auto n = static_cast<std::size_t>(2 * window + 1);
  std::vector<cplx> b0(n), b1(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    b0[i] = {u(gen), u(gen)};
    b1[i] = {u(gen), u(gen)};
    c[i] = {u(gen), u(gen)};
  }
  return euler_spectra::CoefficientSequence::general(window, b0, b1, c, 0.0);
}

// Shooting oracle for finitely supported couplings: beyond the support the Jost solutions
// are exactly μ_±^n, so the recurrence z_{n-1} - z_{n+1} = (λ - b_n c_n) z_n is run inward.
struct Shot {
  cplx zp0, zpm1, zm0, zmm1;  // z^+_0, z^+_{-1}, z^-_0, z^-_{-1}
  cplx F;
};

inline Shot shoot(const euler_spectra::CoefficientSequence& coeffs, cplx lambda, long support) {
  const auto md = euler_spectra::multipliers(lambda);
  auto diag = [&](long n) { return lambda - coeffs.b(n, lambda) * coeffs.c(n); };
  // plus side: z_{n-1} = z_{n+1} + diag_n z_n
  cplx hi = std::pow(md.mu_plus, double(support + 2)), mid = std::pow(md.mu_plus, double(support + 1));
  for (long n = support + 1; n >= 0; --n) {
    const cplx lo = hi + diag(n) * mid;
    hi = mid;
    mid = lo;
  }
  Shot s;
  s.zpm1 = mid;  // z_{-1}
  s.zp0 = hi;    // z_0
  // minus side: z_{n+1} = z_{n-1} - diag_n z_n
  cplx lo = std::pow(md.mu_minus, -double(support + 2)), cur = std::pow(md.mu_minus, -double(support + 1));
  for (long n = -support - 1; n < 0; ++n) {
    const cplx next = lo - diag(n) * cur;
    lo = cur;
    cur = next;
  }
  s.zmm1 = lo;
  s.zm0 = cur;
  const cplx W0 = -(s.zpm1 * s.zm0 - s.zp0 * s.zmm1);
  s.F = W0 / (md.mu_minus - md.mu_plus);
  return s;
}

}  // namespace test_support

#endif
