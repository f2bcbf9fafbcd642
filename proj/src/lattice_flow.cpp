#include "euler_spectra/lattice_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace euler_spectra {

std::string to_string(LatticeVector v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

std::string AdmissibilityReport::summary() const {
  std::ostringstream out;
  out << "||q|| < ||p||: " << (norm_condition ? "pass" : "fail") << "; ";
  out << "||q+np|| > ||p|| for n != 0: " << (shift_condition ? "pass" : "fail");
  if (first_violation) out << " (first violation at n = " << *first_violation << ")";
  out << "; explicit horizon |n| <= " << checked_up_to;
  return out.str();
}

AdmissibilityReport validate_pair(LatticeVector p, LatticeVector q) {
  if (p.is_zero()) fail(ErrorCode::invalid_input, "p must be a nonzero lattice vector");
  if (wedge(p, q) == 0) {
    fail(ErrorCode::degenerate_slice,
         "degenerate slice: L_q = 0 because q = " + to_string(q) + " is parallel to p = " +
             to_string(p));
  }
  const long pp = norm2(p);
  const long qq = norm2(q);
  const long qp = dot(q, p);

  AdmissibilityReport report;
  report.norm_condition = qq < pp;
  report.shift_condition = true;

  // ||q + n p||² - ||p||² >= n² pp - 2|n||qp| + qq - pp; once that lower bound is
  // positive and increasing in |n| no further violation is possible.
  auto lower_bound = [&](long n) { return n * n * pp - 2 * n * std::abs(qp) + qq - pp; };
  long n = 1;
  for (;; ++n) {
    for (long signed_n : {n, -n}) {
      if (norm2(shifted(q, signed_n, p)) <= pp && report.shift_condition) {
        report.shift_condition = false;
        report.first_violation = signed_n;
      }
    }
    const bool bound_positive = lower_bound(n + 1) > 0 && (n + 1) * pp >= std::abs(qp);
    if (n >= 2 && bound_positive) break;
  }
  report.checked_up_to = n;
  return report;
}

double normalization_alpha(LatticeVector p, LatticeVector q) {
  const long qp = wedge(q, p);
  if (qp == 0) fail(ErrorCode::degenerate_slice, "degenerate slice: q ∧ p = 0");
  return 2.0 * static_cast<double>(norm2(p)) / static_cast<double>(qp);
}

double beta_coefficient(LatticeVector p, LatticeVector q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  const double inv_q = 1.0 / static_cast<double>(norm2(q));
  const double inv_p = 1.0 / static_cast<double>(norm2(p));
  return 0.5 * (inv_q - inv_p) * static_cast<double>(wedge(p, q));
}

FlowConfig FlowConfig::make(LatticeVector p, LatticeVector q) {
  const auto report = validate_pair(p, q);
  if (!report.admissible()) {
    fail(ErrorCode::not_admissible, "(p, q) = " + to_string(p) + ", " + to_string(q) +
                                        " is not admissible: " + report.summary());
  }
  return FlowConfig{p, q, normalization_alpha(p, q)};
}

namespace {

// Flow-mode coupling strength s(x) = P / (P x² + 2 D x + E) at real x, with D already
// carrying the side's sign.
struct StrengthModel {
  double P, D, E;

  double value(double x) const { return P / (P * x * x + 2.0 * D * x + E); }
  double derivative(double x) const {
    const double den = P * x * x + 2.0 * D * x + E;
    return -P * (2.0 * P * x + 2.0 * D) / (den * den);
  }
  // ∫_x0^∞ s(x) dx for x0 beyond the real roots of the denominator.
  double integral_from(double x0) const {
    const double c2 = (P * E - D * D) / (P * P);
    const double u0 = x0 + D / P;
    if (c2 > 0.0) {
      const double a = std::sqrt(c2);
      return std::atan(a / u0) / a;
    }
    if (c2 < 0.0) {
      const double a = std::sqrt(-c2);
      return std::atanh(a / u0) / a;
    }
    return 1.0 / u0;
  }
};

constexpr long kEulerMaclaurinStart = 256;

}  // namespace

CoefficientSequence make_coefficients(const FlowConfig& config, long window) {
  return CoefficientSequence::from_flow(config, window);
}

CoefficientSequence CoefficientSequence::from_flow(const FlowConfig& config, long window) {
  if (window < 1) fail(ErrorCode::invalid_input, "coefficient window must be >= 1");
  const auto report = validate_pair(config.p, config.q);
  if (!report.admissible()) {
    fail(ErrorCode::not_admissible, "flow configuration is not admissible: " + report.summary());
  }
  CoefficientSequence seq;
  seq.mode_ = Mode::flow;
  seq.window_ = window;
  seq.flow_ = config;
  seq.rho_.resize(static_cast<std::size_t>(2 * window + 1));
  const long pp = norm2(config.p);
  for (long n = -window; n <= window; ++n) {
    const long shifted_norm = norm2(shifted(config.q, n, config.p));
    const double rho = static_cast<double>(shifted_norm - pp) / static_cast<double>(shifted_norm);
    if (rho == 0.0) fail(ErrorCode::not_admissible, "rho_" + std::to_string(n) + " = 0");
    seq.rho_[static_cast<std::size_t>(n + window)] = rho;
  }

  // sup_{|n| > window} n² pp / ||q + n p||² = 1 / min g(t) over |t| <= 1/(window+1),
  // g(t) = 1 + 2 (q·p) t / pp + ||q||² t² / pp.
  const double P = static_cast<double>(pp);
  const double D = static_cast<double>(dot(config.q, config.p));
  const double Q = static_cast<double>(norm2(config.q));
  const double t_max = 1.0 / static_cast<double>(window + 1);
  auto g = [&](double t) { return 1.0 + 2.0 * D * t / P + Q * t * t / P; };
  double t_star = Q > 0.0 ? std::clamp(-D / Q, -t_max, t_max) : t_max;
  const double g_min = std::min({g(t_star), g(t_max), g(-t_max)});
  seq.tail_constant_ = 1.0 / g_min;
  return seq;
}

CoefficientSequence CoefficientSequence::free_lattice(long window) {
  CoefficientSequence seq;
  seq.mode_ = Mode::free;
  seq.window_ = std::max(0L, window);
  return seq;
}

CoefficientSequence CoefficientSequence::general(long window, std::vector<cplx> b_constant,
                                                 std::vector<cplx> b_slope, std::vector<cplx> c,
                                                 double tail_constant) {
  if (window < 0) fail(ErrorCode::invalid_input, "general window must be >= 0");
  const auto expected = static_cast<std::size_t>(2 * window + 1);
  if (b_constant.empty()) b_constant.assign(expected, cplx{});
  if (b_slope.empty()) b_slope.assign(expected, cplx{});
  if (b_constant.size() != expected || b_slope.size() != expected || c.size() != expected) {
    fail(ErrorCode::invalid_input,
         "general coefficients need arrays of length 2*window+1 = " + std::to_string(expected));
  }
  if (!(tail_constant >= 0.0) || !std::isfinite(tail_constant)) {
    fail(ErrorCode::invalid_input, "general mode requires a finite, non-negative tail bound");
  }
  for (std::size_t i = 0; i < expected; ++i) {
    if (!std::isfinite(std::abs(b_constant[i])) || !std::isfinite(std::abs(b_slope[i])) ||
        !std::isfinite(std::abs(c[i]))) {
      fail(ErrorCode::invalid_input, "general coefficients must be finite");
    }
  }
  CoefficientSequence seq;
  seq.mode_ = Mode::general;
  seq.window_ = window;
  seq.tail_constant_ = tail_constant;
  seq.b_constant_ = std::move(b_constant);
  seq.b_slope_ = std::move(b_slope);
  seq.c_ = std::move(c);
  return seq;
}

double CoefficientSequence::rho(long n) const {
  switch (mode_) {
    case Mode::free: return 1.0;
    case Mode::flow: {
      if (n >= -window_ && n <= window_) return rho_[static_cast<std::size_t>(n + window_)];
      const long pp = norm2(flow_->p);
      const long shifted_norm = norm2(shifted(flow_->q, n, flow_->p));
      return static_cast<double>(shifted_norm - pp) / static_cast<double>(shifted_norm);
    }
    case Mode::general: break;
  }
  fail(ErrorCode::precondition, "general coefficients carry no rho sequence");
}

double CoefficientSequence::coupling_strength(long n) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: {
      const long pp = norm2(flow_->p);
      const long shifted_norm = norm2(shifted(flow_->q, n, flow_->p));
      return static_cast<double>(pp) / static_cast<double>(shifted_norm - pp);
    }
    case Mode::general: break;
  }
  fail(ErrorCode::precondition, "general coefficients carry no rho sequence");
}

cplx CoefficientSequence::b(long n, cplx lambda) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: {
      const double r = rho(n);
      return -lambda * std::sqrt(1.0 - r) / r;
    }
    case Mode::general:
      if (n < -window_ || n > window_) return 0.0;
      return b_constant_[static_cast<std::size_t>(n + window_)] +
             lambda * b_slope_[static_cast<std::size_t>(n + window_)];
  }
  return 0.0;
}

cplx CoefficientSequence::c(long n) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: return std::sqrt(1.0 - rho(n));
    case Mode::general:
      if (n < -window_ || n > window_) return 0.0;
      return c_[static_cast<std::size_t>(n + window_)];
  }
  return 0.0;
}

cplx CoefficientSequence::coupling(long n, cplx lambda) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: return -lambda * coupling_strength(n);
    case Mode::general: return b(n, lambda) * c(n);
  }
  return 0.0;
}

cplx CoefficientSequence::recurrence_diagonal(long n, cplx lambda) const {
  if (mode_ == Mode::flow) return lambda / rho(n);
  return lambda - coupling(n, lambda);
}

double CoefficientSequence::tail_strength_sum(Side side, long N) const {
  if (mode_ != Mode::flow) return 0.0;
  const double s = sign_of(side);
  double sum = 0.0;
  const long start = std::max(N, kEulerMaclaurinStart);
  for (long k = N; k < start; ++k) sum += coupling_strength(static_cast<long>(s) * k);
  const StrengthModel model{static_cast<double>(norm2(flow_->p)),
                            s * static_cast<double>(dot(flow_->q, flow_->p)),
                            static_cast<double>(norm2(flow_->q) - norm2(flow_->p))};
  const double x0 = static_cast<double>(start);
  sum += model.integral_from(x0) + 0.5 * model.value(x0) - model.derivative(x0) / 12.0;
  return sum;
}

cplx CoefficientSequence::tail_coupling_sum(Side side, long N, cplx lambda) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: {
      cplx sum = 0.0;
      for (long k = N; k < 1; ++k) sum += coupling(sign_of(side) * k, lambda);
      return sum - lambda * tail_strength_sum(side, std::max(N, 1L));
    }
    case Mode::general: {
      cplx sum = 0.0;
      for (long k = -window_; k <= window_; ++k) {
        if (sign_of(side) * k >= N) sum += coupling(k, lambda);
      }
      return sum;
    }
  }
  return 0.0;
}

cplx CoefficientSequence::tail_geometric_sum(Side side, long N, cplx lambda, cplx ratio) const {
  if (mode_ == Mode::free) return 0.0;
  const int s = sign_of(side);
  cplx sum = 0.0;
  cplx weight = 1.0;
  constexpr long kCap = 50'000'000;
  for (long j = 0; j < kCap && std::abs(weight) >= 1e-18; ++j, weight *= ratio) {
    const long k = N + j;
    if (mode_ == Mode::general) {
      if (k > window_) break;
      if (k < -window_) continue;
    }
    sum += coupling(s * k, lambda) * weight;
  }
  return sum;
}

double CoefficientSequence::tail_abs_sum(Side side, long N, cplx lambda) const {
  switch (mode_) {
    case Mode::free: return 0.0;
    case Mode::flow: {
      // s_k > 0 except possibly at k = 0, where ρ_0 < 0 gives s_0 < -1.
      double sum = std::abs(lambda) * tail_strength_sum(side, std::max(N, 1L));
      if (N <= 0) {
        for (long k = N; k <= 0; ++k) sum += std::abs(lambda * coupling_strength(sign_of(side) * k));
      }
      return sum;
    }
    case Mode::general: {
      double sum = 0.0;
      for (long k = -window_; k <= window_; ++k) {
        if (sign_of(side) * k >= N) sum += std::abs(coupling(k, lambda));
      }
      return sum;
    }
  }
  return 0.0;
}

std::optional<long> CoefficientSequence::support() const {
  switch (mode_) {
    case Mode::free: return 0L;
    case Mode::flow: return std::nullopt;
    case Mode::general: return window_;
  }
  return std::nullopt;
}

std::string CoefficientSequence::describe() const {
  std::ostringstream out;
  switch (mode_) {
    case Mode::free: out << "free lattice (rho = 1)"; break;
    case Mode::flow:
      out << "flow p = " << to_string(flow_->p) << ", q = " << to_string(flow_->q)
          << ", alpha = " << flow_->alpha << ", window = " << window_
          << ", tail constant = " << tail_constant_;
      break;
    case Mode::general:
      out << "general coefficients on [-" << window_ << ", " << window_
          << "], tail bound = " << tail_constant_;
      break;
  }
  return out.str();
}

std::vector<double> apply_slice_rho(const CoefficientSequence& coeffs, long N,
                                    const std::vector<double>& w) {
  const auto size = static_cast<long>(w.size());
  if (size != 2 * N + 1) fail(ErrorCode::invalid_input, "vector length must be 2N+1");
  auto at = [&](long n) { return (n < -N || n > N) ? 0.0 : w[static_cast<std::size_t>(n + N)]; };
  std::vector<double> out(w.size());
  for (long n = -N; n <= N; ++n) {
    out[static_cast<std::size_t>(n + N)] =
        coeffs.rho(n - 1) * at(n - 1) - coeffs.rho(n + 1) * at(n + 1);
  }
  return out;
}

std::vector<double> apply_slice_beta(const FlowConfig& config, long N,
                                     const std::vector<double>& w) {
  const auto size = static_cast<long>(w.size());
  if (size != 2 * N + 1) fail(ErrorCode::invalid_input, "vector length must be 2N+1");
  auto at = [&](long n) { return (n < -N || n > N) ? 0.0 : w[static_cast<std::size_t>(n + N)]; };
  auto weight = [&](long n) {
    return config.alpha * beta_coefficient(config.p, shifted(config.q, n, config.p));
  };
  std::vector<double> out(w.size());
  for (long n = -N; n <= N; ++n) {
    out[static_cast<std::size_t>(n + N)] = weight(n - 1) * at(n - 1) - weight(n + 1) * at(n + 1);
  }
  return out;
}

}  // namespace euler_spectra
