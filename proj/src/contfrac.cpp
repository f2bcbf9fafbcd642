#include "euler_spectra/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace euler_spectra {

void check_sector(cplx lambda, double sector_margin) {
  const double limit = std::numbers::pi / 2 - sector_margin;
  if (!(lambda.real() > 0.0) || std::abs(std::arg(lambda)) > limit) {
    std::ostringstream out;
    out << "continued fractions need Re λ > 0 and |arg λ| <= π/2 - " << sector_margin << ", got λ = "
        << lambda;
    fail(ErrorCode::sector_violation, out.str());
  }
}

cplx convergent(Side side, cplx lambda, const CoefficientSequence& coeffs, long depth) {
  if (!coeffs.has_rho()) fail(ErrorCode::precondition, "continued fractions need a ρ sequence");
  const long sign = sign_of(side);
  cplx t = 0.0;
  for (long k = depth; k >= 1; --k) t = 1.0 / (coeffs.recurrence_diagonal(sign * k, lambda) + t);
  return t;
}

ContinuedFractionValue continued_fraction(Side side, cplx lambda, const CoefficientSequence& coeffs,
                                          const ContinuedFractionOptions& options) {
  check_sector(lambda, options.sector_margin);
  if (!coeffs.has_rho()) fail(ErrorCode::precondition, "continued fractions need a ρ sequence");

  long depth = std::max<long>(1, options.initial_depth);
  cplx previous = convergent(side, lambda, coeffs, depth);
  while (true) {
    // The last doubling is clamped so the cap itself is still tried.
    const long next = std::min(2 * depth, options.depth_cap);
    if (next <= depth) {
      std::ostringstream out;
      out << "g_" << to_string(side) << "(" << lambda << ") not converged at depth " << depth;
      fail(ErrorCode::non_convergence, out.str());
    }
    const cplx value = convergent(side, lambda, coeffs, next);
    const double change = std::abs(value - previous);
    depth = next;
    previous = value;
    if (change <= options.tol * std::max(1.0, std::abs(value))) {
      ContinuedFractionValue out;
      out.value = value;
      out.depth = depth;
      out.est_error = change;
      if (lambda.imag() == 0.0) {
        const double other = convergent(side, lambda, coeffs, depth + 1).real();
        out.bracket = std::minmax(value.real(), other);
        out.est_error = std::max(change, std::abs(other - value.real()));
      }
      return out;
    }
  }
}

double phi_function(double lambda, const CoefficientSequence& coeffs,
                    const ContinuedFractionOptions& options) {
  const cplx l(lambda, 0.0);
  return (coeffs.recurrence_diagonal(0, l) + continued_fraction(Side::plus, l, coeffs, options).value +
          continued_fraction(Side::minus, l, coeffs, options).value)
      .real();
}

GValue g_function(const JostPair& pair, const CoefficientSequence& coeffs,
                  const ContinuedFractionOptions& options) {
  GValue out;
  out.g_plus = continued_fraction(Side::plus, pair.lambda, coeffs, options);
  out.g_minus = continued_fraction(Side::minus, pair.lambda, coeffs, options);
  out.phi = coeffs.recurrence_diagonal(0, pair.lambda) + out.g_plus.value + out.g_minus.value;
  out.value = pair.z_plus.at(0) * pair.z_minus.at(0) * out.phi / pair.md.gap();
  return out;
}

GValue g_function(cplx lambda, const CoefficientSequence& coeffs, const ContinuedFractionOptions& options,
                  const JostOptions& jost) {
  check_sector(lambda, options.sector_margin);
  return g_function(solve_jost_pair(lambda, coeffs, jost), coeffs, options);
}

RatioIdentityReport ratio_identity_check(double lambda, const CoefficientSequence& coeffs, double tol,
                                         bool throw_on_fail, const ContinuedFractionOptions& options,
                                         const JostOptions& jost) {
  if (!(lambda > 0.0)) fail(ErrorCode::precondition, "ratio identities are checked for real λ > 0");
  const cplx l(lambda, 0.0);
  const JostPair pair = solve_jost_pair(l, coeffs, jost);
  const cplx g_plus = continued_fraction(Side::plus, l, coeffs, options).value;
  const cplx g_minus = continued_fraction(Side::minus, l, coeffs, options).value;

  RatioIdentityReport report;
  report.tol = tol;
  report.v0_plus = pair.z_plus.at(-1) / pair.z_plus.at(0);
  report.v0_minus = pair.z_minus.at(-1) / pair.z_minus.at(0);
  report.cf_plus = coeffs.recurrence_diagonal(0, l) + g_plus;
  report.cf_minus = -g_minus;
  report.plus_residual = std::abs(report.v0_plus - report.cf_plus) / std::max(1.0, std::abs(report.cf_plus));
  report.minus_residual = std::abs(report.v0_minus - report.cf_minus) / std::max(1.0, std::abs(report.cf_minus));

  // Consecutive ratios v_n = z_{n-1}/z_n plugged back into the recurrence itself.
  const auto ratio = [](const IndexedSequence& z, long n) { return z.at(n - 1) / z.at(n); };
  const long lo = pair.z_plus.first() + 1;
  const long hi = pair.z_plus.last() - 1;
  for (long n = lo; n <= hi; ++n) {
    const cplx d = coeffs.recurrence_diagonal(n, l);
    const cplx vp = ratio(pair.z_plus, n);
    const cplx rp = vp - (d + 1.0 / ratio(pair.z_plus, n + 1));
    const cplx vm_next = ratio(pair.z_minus, n + 1);
    const cplx rm = vm_next - 1.0 / (ratio(pair.z_minus, n) - d);
    report.recurrence_residual =
        std::max({report.recurrence_residual, std::abs(rp) / std::max(1.0, std::abs(vp)),
                  std::abs(rm) / std::max(1.0, std::abs(vm_next))});
  }
  report.pass = report.plus_residual <= tol && report.minus_residual <= tol && report.recurrence_residual <= tol;
  if (throw_on_fail && !report.pass) {
    std::ostringstream out;
    out << "ratio identities violated at λ = " << lambda << ": |v0+ - (λ/ρ0 + g+)| = " << report.plus_residual
        << ", |v0- + g-| = " << report.minus_residual << ", recurrence " << report.recurrence_residual;
    fail(ErrorCode::identity_violation, out.str());
  }
  return report;
}

}  // namespace euler_spectra
