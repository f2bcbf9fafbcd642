#include "euler_spectra/multipliers.hpp"

#include <cmath>
#include <sstream>

namespace euler_spectra {

cplx integer_power(cplx z, long m) {
  if (m < 0) return 1.0 / integer_power(z, -m);
  cplx result = 1.0;
  cplx base = z;
  for (unsigned long e = static_cast<unsigned long>(m); e != 0; e >>= 1) {
    if (e & 1UL) result *= base;
    base *= base;
  }
  return result;
}

double distance_to_essential(cplx lambda) {
  const double dx = std::abs(lambda.real());
  const double dy = std::max(0.0, std::abs(lambda.imag()) - 2.0);
  return std::hypot(dx, dy);
}

SpectralPoint admit(cplx lambda, double eps_ess) {
  const double dist = distance_to_essential(lambda);
  if (!std::isfinite(dist) || dist <= eps_ess) {
    std::ostringstream out;
    out.precision(17);
    out << "lambda = " << lambda.real() << (lambda.imag() < 0 ? "" : "+") << lambda.imag()
        << "i lies within " << eps_ess << " of the essential spectrum [-2i, 2i]";
    fail(ErrorCode::essential_spectrum, out.str());
  }
  return {lambda, dist};
}

MultiplierData multipliers(cplx lambda, double eps_ess) {
  admit(lambda, eps_ess);

  // Larger root first, choosing the square-root sign that adds rather than cancels.
  cplx root = std::sqrt(lambda * lambda + 4.0);
  if (std::real(std::conj(lambda) * root) < 0.0) root = -root;
  const cplx big = -0.5 * (lambda + root);
  const cplx small = -1.0 / big;

  MultiplierData md;
  md.lambda = lambda;
  md.mu_plus = small;
  md.mu_minus = big;
  const cplx gap = md.gap();

  md.A << -lambda, 1.0, 1.0, 0.0;
  md.W << md.mu_plus, md.mu_minus, 1.0, 1.0;
  md.W_inv << 1.0, -md.mu_minus, -1.0, md.mu_plus;
  md.W_inv /= gap;
  md.M << md.mu_plus, md.mu_minus, -md.mu_plus, -md.mu_minus;
  md.M /= gap;
  md.Q_plus << 1.0, 0.0, 0.0, 0.0;
  md.Q_minus << 0.0, 0.0, 0.0, 1.0;
  md.P_plus = md.W * md.Q_plus * md.W_inv;
  md.P_minus = md.W * md.Q_minus * md.W_inv;
  return md;
}

cplx h_kernel(const MultiplierData& md, long n) {
  if (n < 0) fail(ErrorCode::invalid_input, "h(n) is defined for n >= 0");
  return (integer_power(md.ratio(), n) - 1.0) / md.gap();
}

Mat2 power_times_projection(const MultiplierData& md, long m, Side side) {
  Mat2 diag = Mat2::Zero();
  if (side == Side::plus) {
    diag(0, 0) = integer_power(md.mu_plus, m);
  } else {
    diag(1, 1) = integer_power(md.mu_minus, m);
  }
  return md.W * diag * md.W_inv;
}

}  // namespace euler_spectra
