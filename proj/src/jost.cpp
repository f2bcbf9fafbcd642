#include "euler_spectra/jost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace euler_spectra {

double tail_size(const MultiplierData& md, const CoefficientSequence& coeffs, Side side, long N) {
  return coeffs.tail_abs_sum(side, N, md.lambda) * md.h_bound();
}

long choose_n_tail(const MultiplierData& md, const CoefficientSequence& coeffs,
                   const JostOptions& options) {
  const long floor_n = std::max(options.window + 1, 2L);
  if (options.n_tail > 0) return options.n_tail;
  if (const auto support = coeffs.support()) return std::max(*support + 1, floor_n);
  long N = std::max(options.n_tail_min, floor_n);
  while (N < options.n_tail_cap) {
    const double tail = tail_size(md, coeffs, Side::plus, N) + tail_size(md, coeffs, Side::minus, N);
    if (tail <= options.tail_target) break;
    N *= 2;
  }
  return std::min(N, options.n_tail_cap);
}

void check_contraction(const MultiplierData& md, const CoefficientSequence& coeffs, long n_tail) {
  for (Side side : {Side::plus, Side::minus}) {
    const double tail = tail_size(md, coeffs, side, n_tail);
    if (!(tail < 0.5)) {
      std::ostringstream out;
      out << "tail sum on side " << to_string(side) << " is " << tail
          << " >= 1/2 at N_tail = " << n_tail << "; increase N_tail";
      fail(ErrorCode::contraction_failure, out.str());
    }
  }
}

IndexedSequence solve_jost_hat(Side side, const MultiplierData& md,
                               const CoefficientSequence& coeffs, long n_tail) {
  if (n_tail < 1) fail(ErrorCode::invalid_input, "N_tail must be >= 1");
  check_contraction(md, coeffs, n_tail);

  const cplx lambda = md.lambda;
  const cplx r = md.ratio();
  const cplx gap = md.gap();
  const int s = sign_of(side);

  std::vector<cplx> values(static_cast<std::size_t>(n_tail + 1));
  // Running sums over the sites already solved (farther from 0):
  //   geometric = Σ b_k c_k r^{|k-n|} ẑ_k,  plain = Σ b_k c_k ẑ_k.
  cplx geometric = r * coeffs.tail_geometric_sum(side, n_tail, lambda, r);
  cplx plain = coeffs.tail_coupling_sum(side, n_tail, lambda);
  values[static_cast<std::size_t>(n_tail)] = 1.0;
  for (long j = n_tail - 1; j >= 0; --j) {
    const cplx zhat = 1.0 + (geometric - plain) / gap;
    values[static_cast<std::size_t>(j)] = zhat;
    const cplx bc = coeffs.coupling(s * j, lambda);
    geometric = r * (geometric + bc * zhat);
    plain += bc * zhat;
  }

  if (side == Side::plus) return IndexedSequence(0, std::move(values));
  std::reverse(values.begin(), values.end());
  return IndexedSequence(-n_tail, std::move(values));
}

double jost_plugback_residual(Side side, const MultiplierData& md,
                              const CoefficientSequence& coeffs, const IndexedSequence& zhat,
                              long count) {
  const int s = sign_of(side);
  const long n_tail = side == Side::plus ? zhat.last() : -zhat.first();
  const cplx lambda = md.lambda;
  const cplx r = md.ratio();
  const cplx gap = md.gap();
  const cplx tail_geometric = coeffs.tail_geometric_sum(side, n_tail, lambda, r);
  const cplx tail_plain = coeffs.tail_coupling_sum(side, n_tail, lambda);

  double worst = 0.0;
  for (long j = 0; j < std::min(count, n_tail); ++j) {
    cplx rhs = 1.0;
    cplx power = r;  // r^{m - j}
    for (long m = j + 1; m < n_tail; ++m, power *= r) {
      rhs += coeffs.coupling(s * m, lambda) * (power - 1.0) / gap * zhat.at(s * m);
    }
    // power == r^{n_tail - j} here
    rhs += (power * tail_geometric - tail_plain) / gap;
    worst = std::max(worst, std::abs(zhat.at(s * j) - rhs));
  }
  return worst;
}

IndexedSequence propagate(const IndexedSequence& z, cplx lambda, const CoefficientSequence& coeffs,
                          long lo, long hi) {
  if (z.size() < 2) fail(ErrorCode::invalid_input, "propagation needs two adjacent seed values");
  IndexedSequence out = z;
  const long first = z.first();
  const long last = z.last();
  if (lo < first) {
    out.extend_to(lo);
    for (long n = first - 1; n >= lo; --n) {
      const long m = n + 1;  // z_{m-1} = z_{m+1} + d_m z_m
      out.at(n) = out.at(m + 1) + coeffs.recurrence_diagonal(m, lambda) * out.at(m);
    }
  }
  if (hi > last) {
    out.extend_to(hi);
    for (long n = last + 1; n <= hi; ++n) {
      const long m = n - 1;  // z_{m+1} = z_{m-1} - d_m z_m
      out.at(n) = out.at(m - 1) - coeffs.recurrence_diagonal(m, lambda) * out.at(m);
    }
  }
  return out;
}

cplx wronskian(const IndexedSequence& u, const IndexedSequence& v, long n) {
  const cplx value = u.at(n - 1) * v.at(n) - u.at(n) * v.at(n - 1);
  return ((n - 1) % 2 == 0) ? value : -value;
}

JostPair solve_jost_pair(cplx lambda, const CoefficientSequence& coeffs,
                         const JostOptions& options) {
  JostPair pair;
  pair.lambda = lambda;
  pair.md = multipliers(lambda, options.eps_ess);
  pair.n_tail = choose_n_tail(pair.md, coeffs, options);
  const long window = std::min(options.window, pair.n_tail - 1);
  pair.tail = tail_size(pair.md, coeffs, Side::plus, pair.n_tail) +
              tail_size(pair.md, coeffs, Side::minus, pair.n_tail);

  pair.zhat_plus = solve_jost_hat(Side::plus, pair.md, coeffs, pair.n_tail);
  pair.zhat_minus = solve_jost_hat(Side::minus, pair.md, coeffs, pair.n_tail);

  std::vector<cplx> plus(static_cast<std::size_t>(window + 1));
  std::vector<cplx> minus(static_cast<std::size_t>(window + 1));
  for (long n = 0; n <= window; ++n) {
    plus[static_cast<std::size_t>(n)] = integer_power(pair.md.mu_plus, n) * pair.zhat_plus.at(n);
    minus[static_cast<std::size_t>(window - n)] =
        integer_power(pair.md.mu_minus, -n) * pair.zhat_minus.at(-n);
  }
  pair.z_plus = propagate(IndexedSequence(0, std::move(plus)), lambda, coeffs, -window - 1, window);
  pair.z_minus =
      propagate(IndexedSequence(-window, std::move(minus)), lambda, coeffs, -window - 1, window);
  pair.W0 = wronskian(pair.z_plus, pair.z_minus, 0);
  return pair;
}

cplx jost_function(const JostPair& pair) {
  return pair.W0 / (pair.md.mu_minus - pair.md.mu_plus);
}

cplx jost_function(cplx lambda, const CoefficientSequence& coeffs, const JostOptions& options) {
  return jost_function(solve_jost_pair(lambda, coeffs, options));
}

NonvanishingReport check_nonvanishing(const JostPair& pair, long N) {
  if (pair.lambda.imag() != 0.0 || !(pair.lambda.real() > 0.0)) {
    fail(ErrorCode::precondition, "the nonvanishing check applies to real lambda > 0 only");
  }
  N = std::min(N, pair.n_tail);
  NonvanishingReport report;
  report.min_abs_zhat_plus = std::numeric_limits<double>::infinity();
  report.min_abs_zhat_minus = std::numeric_limits<double>::infinity();
  report.min_abs_z_plus = std::numeric_limits<double>::infinity();
  report.min_abs_z_minus = std::numeric_limits<double>::infinity();
  report.ratios_positive_plus = true;
  report.ratios_negative_minus = true;
  for (long n = 0; n <= N; ++n) {
    report.min_abs_zhat_plus = std::min(report.min_abs_zhat_plus, std::abs(pair.zhat_plus.at(n)));
    report.min_abs_zhat_minus = std::min(report.min_abs_zhat_minus, std::abs(pair.zhat_minus.at(-n)));
  }
  for (long n = 0; n <= pair.z_plus.last(); ++n) {
    report.min_abs_z_plus = std::min(report.min_abs_z_plus, std::abs(pair.z_plus.at(n)));
    report.min_abs_z_minus = std::min(report.min_abs_z_minus, std::abs(pair.z_minus.at(-n)));
  }
  // v^+_n = μ_+^{-1} ẑ^+_{n-1}/ẑ^+_n with μ_+ > 0; v^-_n = μ_-^{-1} ẑ^-_{n-1}/ẑ^-_n with μ_- < 0.
  const double mu_plus = pair.md.mu_plus.real();
  const double mu_minus = pair.md.mu_minus.real();
  for (long n = 1; n <= N; ++n) {
    const double v = (pair.zhat_plus.at(n - 1) / pair.zhat_plus.at(n)).real() / mu_plus;
    if (!(v > 0.0)) report.ratios_positive_plus = false;
  }
  for (long n = -N + 1; n <= 0; ++n) {
    const double v = (pair.zhat_minus.at(n - 1) / pair.zhat_minus.at(n)).real() / mu_minus;
    if (!(v < 0.0)) report.ratios_negative_minus = false;
  }
  report.pass = report.min_abs_zhat_plus > 0.0 && report.min_abs_zhat_minus > 0.0 &&
                report.min_abs_z_plus > 0.0 && report.min_abs_z_minus > 0.0 &&
                report.ratios_positive_plus && report.ratios_negative_minus;
  std::ostringstream out;
  out << "min|zhat+| = " << report.min_abs_zhat_plus << ", min|zhat-| = " << report.min_abs_zhat_minus
      << ", v+ > 0: " << (report.ratios_positive_plus ? "yes" : "no")
      << ", v- < 0: " << (report.ratios_negative_minus ? "yes" : "no");
  report.detail = out.str();
  return report;
}

}  // namespace euler_spectra
