#include "euler_spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace euler_spectra {

std::vector<std::pair<std::string, cplx>> FiveFunctionRecord::available() const {
  std::vector<std::pair<std::string, cplx>> out{{"det_K", det_K}};
  if (det_T) out.emplace_back("det_T", *det_T);
  out.emplace_back("evans", evans);
  out.emplace_back("jost", jost);
  if (g_fun) out.emplace_back("G", *g_fun);
  return out;
}

double max_pairwise_gap(const std::vector<cplx>& values) {
  double gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double denom = std::max(std::abs(values[i]), std::abs(values[j]));
      if (denom > 0.0) gap = std::max(gap, std::abs(values[i] - values[j]) / denom);
    }
  }
  return gap;
}

namespace {

bool in_sector(cplx lambda, double margin) {
  try {
    check_sector(lambda, margin);
    return true;
  } catch (const SpectralError&) {
    return false;
  }
}

}  // namespace

FiveFunctionRecord evaluate_all(cplx lambda, const CoefficientSequence& coeffs,
                                const EvaluationOptions& options) {
  FiveFunctionRecord rec;
  rec.lambda = lambda;
  const double eps = options.jost.eps_ess;
  admit(lambda, eps);

  const JostPair pair = solve_jost_pair(lambda, coeffs, options.jost);
  rec.jost = jost_function(pair);
  rec.N_tail_used = pair.n_tail;
  rec.evans = evans_function(lambda, coeffs, options.jost);

  const TruncatedPencil k = truncated_pencil(lambda, coeffs, options.fredholm_n, eps);
  rec.det_K = k.extrapolated;
  rec.N_used = options.fredholm_n;
  rec.min_pivot = k.min_pivot;
  if (options.compute_det_t) {
    const TruncatedPencil t = truncated_system_pencil(lambda, coeffs, options.fredholm_n, eps);
    rec.det_T = t.extrapolated;
    rec.min_pivot = std::min(rec.min_pivot, t.min_pivot);
  }

  if (coeffs.has_rho() && in_sector(lambda, options.cf.sector_margin)) {
    const GValue g = g_function(pair, coeffs, options.cf);
    rec.g_fun = g.value;
    rec.depth_used = std::max(g.g_plus.depth, g.g_minus.depth);
  }

  std::vector<cplx> values;
  for (const auto& [name, value] : rec.available()) values.push_back(value);
  rec.max_pairwise_gap = max_pairwise_gap(values);
  return rec;
}

double evans_scale(cplx lambda, const CoefficientSequence& coeffs, double radius, const JostOptions& options) {
  std::vector<double> mags;
  for (cplx step : {cplx(radius, 0), cplx(-radius, 0), cplx(0, radius), cplx(0, -radius)}) {
    const cplx at = lambda + step;
    if (distance_to_essential(at) <= options.eps_ess) continue;
    mags.push_back(std::abs(evans_function(at, coeffs, options)));
  }
  if (mags.empty()) fail(ErrorCode::essential_spectrum, "no probe point off the segment for the Evans scale");
  std::sort(mags.begin(), mags.end());
  const std::size_t m = mags.size();
  return m % 2 ? mags[m / 2] : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
}

// ---------------------------------------------------------------------------------------------
// Argument principle

WindingResult winding_number(const CoefficientSequence& coeffs, cplx lo, cplx hi, int samples_per_side,
                             const JostOptions& options) {
  if (!(hi.real() > lo.real()) || !(hi.imag() > lo.imag()) || samples_per_side < 1) {
    fail(ErrorCode::invalid_input, "rectangle needs lo < hi componentwise and >= 1 sample per side");
  }
  // Distance from the closed rectangle to the segment {0} × [-2, 2].
  const double dx = lo.real() > 0 ? lo.real() : (hi.real() < 0 ? -hi.real() : 0.0);
  const double dy = lo.imag() > 2 ? lo.imag() - 2 : (hi.imag() < -2 ? -2 - hi.imag() : 0.0);
  if (std::hypot(dx, dy) <= options.eps_ess) {
    fail(ErrorCode::essential_spectrum, "rectangle meets the essential spectrum [-2i, 2i]");
  }

  const cplx corners[4] = {lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}};
  const auto point = [&](double s) {
    const int side = std::min(3, static_cast<int>(s));
    const double t = s - side;
    return corners[side] + t * (corners[(side + 1) % 4] - corners[side]);
  };

  WindingResult out;
  out.min_abs_boundary = std::numeric_limits<double>::infinity();
  const auto eval = [&](double s) {
    const cplx value = evans_function(point(s), coeffs, options);
    out.min_abs_boundary = std::min(out.min_abs_boundary, std::abs(value));
    ++out.samples;
    if (std::abs(value) < 1e-8) {
      std::ostringstream msg;
      msg << "|E| = " << std::abs(value) << " at " << point(s) << " on the contour";
      fail(ErrorCode::boundary_zero, msg.str());
    }
    return value;
  };

  double total = 0.0;
  const std::function<void(double, cplx, double, cplx, int)> accumulate =
      [&](double s0, cplx e0, double s1, cplx e1, int depth) {
        const double step = std::arg(e1 / e0);
        if (std::abs(step) < std::numbers::pi / 2) {
          total += step;
          return;
        }
        if (depth > 40) fail(ErrorCode::non_convergence, "phase refinement did not resolve a contour step");
        const double mid = 0.5 * (s0 + s1);
        const cplx em = eval(mid);
        accumulate(s0, e0, mid, em, depth + 1);
        accumulate(mid, em, s1, e1, depth + 1);
      };

  const int count = 4 * samples_per_side;
  const cplx first = eval(0.0);
  cplx previous = first;
  for (int i = 1; i <= count; ++i) {
    const double s0 = static_cast<double>(i - 1) / samples_per_side;
    const double s1 = static_cast<double>(i) / samples_per_side;
    const cplx current = i == count ? first : eval(s1);
    accumulate(s0, previous, s1, current, 0);
    previous = current;
  }
  out.raw = total / (2 * std::numbers::pi);
  out.winding = static_cast<int>(std::lround(out.raw));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Root refinement

RefineResult refine_zero(const CoefficientSequence& coeffs, cplx seed, double trust_radius, int max_iterations,
                         const JostOptions& options) {
  RefineResult out;
  out.lambda = seed;
  try {
    out.scale = evans_scale(seed, coeffs, 0.25, options);
    out.value = evans_function(seed, coeffs, options);
  } catch (const SpectralError& e) {
    out.detail = e.what();
    return out;
  }
  const double target = 1e-10 * out.scale;
  if (std::abs(out.value) <= target) {
    out.converged = true;
    out.detail = "seed already satisfies the residual test";
    return out;
  }

  cplx x0 = seed, f0 = out.value;
  cplx x1 = seed + 1e-4 * std::max(1.0, std::abs(seed));
  cplx f1;
  try {
    f1 = evans_function(x1, coeffs, options);
  } catch (const SpectralError& e) {
    out.detail = e.what();
    return out;
  }
  const auto keep_best = [&](cplx x, cplx f) {
    if (std::abs(f) < std::abs(out.value)) {
      out.lambda = x;
      out.value = f;
    }
  };
  keep_best(x1, f1);

  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    if (f1 == f0) {
      out.detail = "secant slope vanished";
      return out;
    }
    const cplx step = -f1 * (x1 - x0) / (f1 - f0);
    const cplx x2 = x1 + step;
    if (std::abs(x2 - seed) > trust_radius) {
      out.detail = "iterate left the trust region around the seed";
      return out;
    }
    cplx f2;
    try {
      f2 = evans_function(x2, coeffs, options);
    } catch (const SpectralError& e) {
      out.detail = e.what();
      return out;
    }
    keep_best(x2, f2);
    if (std::abs(f2) <= target || (std::abs(step) <= 1e-12 && std::abs(f2) <= 1e-6 * out.scale)) {
      out.lambda = x2;
      out.value = f2;
      out.converged = true;
      return out;
    }
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
  }
  out.detail = "iteration limit reached";
  return out;
}

// ---------------------------------------------------------------------------------------------
// Finite sections

double ScaledValue::value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }

ScaledValue finite_section_charpoly(const CoefficientSequence& coeffs, long N, double lambda) {
  if (!coeffs.has_rho()) fail(ErrorCode::precondition, "finite sections are built from ρ");
  if (N < 0) fail(ErrorCode::invalid_input, "section half-width must be >= 0");
  // D_i = λ D_{i-1} + ρ_{n-1} ρ_n D_{i-2}, n = i - N, for the zero-diagonal tridiagonal section.
  double prev = 1.0, cur = lambda;
  long exponent = 0;
  for (long n = -N + 1; n <= N; ++n) {
    const double next = lambda * cur + coeffs.rho(n - 1) * coeffs.rho(n) * prev;
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(prev), std::abs(cur));
    if (big > 0x1p400 || (big < 0x1p-400 && big > 0.0)) {
      int e = 0;
      std::frexp(big, &e);
      prev = std::ldexp(prev, -e);
      cur = std::ldexp(cur, -e);
      exponent += e;
    }
  }
  int e = 0;
  const double m = std::frexp(cur, &e);
  return {m, exponent + e};
}

std::vector<double> finite_section_oracle(const CoefficientSequence& coeffs, long N, double lambda_max,
                                          long scan_steps) {
  if (N < 1) fail(ErrorCode::invalid_input, "finite section oracle needs N >= 1");
  const auto sign = [&](double x) {
    const double m = finite_section_charpoly(coeffs, N, x).mantissa;
    return (m > 0) - (m < 0);
  };
  std::vector<double> roots;
  const double h = lambda_max / static_cast<double>(scan_steps);
  double a = h;
  int sa = sign(a);
  for (long i = 2; i <= scan_steps; ++i) {
    const double b = h * static_cast<double>(i);
    const int sb = sign(b);
    if (sb == 0) {
      roots.push_back(b);
    } else if (sa != 0 && sa != sb) {
      double lo = a, hi = b;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const int sm = sign(mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        (sm == sa ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    sa = sb;
  }
  return roots;
}

// ---------------------------------------------------------------------------------------------
// Eigensequence

Eigensequence eigensequence(const CoefficientSequence& coeffs, cplx lambda, long window, double max_residual,
                            const JostOptions& options) {
  if (!coeffs.has_rho()) fail(ErrorCode::precondition, "the eigensequence is defined through w = z/ρ");
  JostOptions opts = options;
  opts.window = std::max(window, options.window);
  const JostPair pair = solve_jost_pair(lambda, coeffs, opts);

  Eigensequence out;
  out.lambda = lambda;
  out.window = window;
  const cplx match = pair.z_plus.at(0) / pair.z_minus.at(0);
  std::vector<cplx> z(static_cast<std::size_t>(2 * window + 1));
  for (long n = -window; n <= window; ++n) {
    z[static_cast<std::size_t>(n + window)] = n >= 0 ? pair.z_plus.at(n) : match * pair.z_minus.at(n);
  }
  std::vector<cplx> w(z.size());
  double norm = 0.0;
  for (long n = -window; n <= window; ++n) {
    const auto i = static_cast<std::size_t>(n + window);
    w[i] = z[i] / coeffs.rho(n);
    norm += std::norm(w[i]);
  }
  norm = std::sqrt(norm);
  for (auto& v : w) v /= norm;
  out.w = IndexedSequence(-window, w);

  double res2 = 0.0, ref2 = 0.0;
  for (long n = -window + 1; n <= window - 1; ++n) {
    const cplx r = coeffs.rho(n - 1) * out.w.at(n - 1) - coeffs.rho(n + 1) * out.w.at(n + 1) - lambda * out.w.at(n);
    res2 += std::norm(r);
    ref2 += std::norm(lambda * out.w.at(n));
  }
  out.residual = std::sqrt(res2 / ref2);

  // z^+ against z^- on the full window, phase matched at n = 0.
  double np = 0.0, nm = 0.0;
  for (long n = -window; n <= window; ++n) {
    np += std::norm(pair.z_plus.at(n));
    nm += std::norm(pair.z_minus.at(n));
  }
  np = std::sqrt(np);
  nm = std::sqrt(nm);
  const cplx a0 = pair.z_plus.at(0) / np, b0 = pair.z_minus.at(0) / nm;
  const cplx phase = (a0 / std::abs(a0)) / (b0 / std::abs(b0));
  double defect = 0.0;
  for (long n = -window; n <= window; ++n) {
    defect += std::norm(pair.z_plus.at(n) / np - phase * pair.z_minus.at(n) / nm);
  }
  out.proportionality_defect = std::sqrt(defect);

  if (out.residual > max_residual) {
    std::ostringstream msg;
    msg << "eigensequence residual " << out.residual << " at λ = " << lambda << " exceeds " << max_residual;
    fail(ErrorCode::large_residual, msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Real eigenvalue by bisection on φ

EigenvalueResult find_real_eigenvalue(const CoefficientSequence& coeffs, const BisectionOptions& bisection,
                                      const EvaluationOptions& evaluation) {
  if (!coeffs.has_rho() || !(coeffs.rho(0) < 0.0)) {
    fail(ErrorCode::precondition, "φ changes sign only when ρ_0 < 0 (no positive eigenvalue is implied)");
  }
  const auto phi = [&](double l) { return phi_function(l, coeffs, bisection.cf); };

  double lo = bisection.lambda_min;
  double phi_lo = phi(lo);
  if (!(phi_lo > 0.0)) {
    std::ostringstream msg;
    msg << "φ(" << lo << ") = " << phi_lo << " is not positive";
    fail(ErrorCode::bracket_failure, msg.str());
  }
  double hi = std::max(1.0, 2 * lo);
  double phi_hi = phi(hi);
  while (phi_hi > 0.0) {
    lo = hi;
    phi_lo = phi_hi;
    hi *= 2;
    if (hi > bisection.lambda_cap) fail(ErrorCode::bracket_failure, "φ stays positive up to the bracket cap");
    phi_hi = phi(hi);
  }

  EigenvalueResult out;
  out.method = "real_bisection";
  double mid = 0.5 * (lo + hi);
  double phi_mid = phi(mid);
  int steps = 1;
  while (std::abs(phi_mid) > bisection.phi_tol && hi - lo > bisection.width_tol) {
    (phi_mid > 0.0 ? lo : hi) = mid;
    mid = 0.5 * (lo + hi);
    phi_mid = phi(mid);
    ++steps;
  }
  out.lambda_star = mid;
  out.phi_at_star = phi_mid;
  out.bisection_steps = steps;
  out.sequence = eigensequence(coeffs, mid, 32, 1e-6, evaluation.jost);
  out.residual = out.sequence.residual;
  out.five_values = evaluate_all(mid, coeffs, evaluation);
  out.scale = evans_scale(mid, coeffs, 0.25, evaluation.jost);
  for (const auto& [name, value] : out.five_values.available()) {
    out.max_scaled_value = std::max(out.max_scaled_value, std::abs(value) / out.scale);
  }
  return out;
}

}  // namespace euler_spectra
