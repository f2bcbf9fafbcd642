#include "euler_spectra/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace euler_spectra {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_admissible:
      return 1;
    case ErrorCode::invalid_input:
    case ErrorCode::degenerate_slice:
    case ErrorCode::essential_spectrum:
    case ErrorCode::sector_violation:
    case ErrorCode::precondition:
    case ErrorCode::index_out_of_window:
      return 2;
    case ErrorCode::contraction_failure:
    case ErrorCode::non_convergence:
    case ErrorCode::singular_factorization:
    case ErrorCode::bracket_failure:
    case ErrorCode::boundary_zero:
      return 3;
    case ErrorCode::identity_violation:
    case ErrorCode::block_mismatch:
    case ErrorCode::large_residual:
      return 4;
  }
  return 4;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

int failure_exit_code(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass && r.error && exit_code_for(*r.error) == 3) return 3;
  }
  return 4;
}

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

class Suite {
public:
  explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

  // `body` fills value/detail and returns the measured quantity; pass iff value <= tol.
  void run(const std::string& name, double tol, const std::function<double(CheckResult&)>& body) {
    CheckResult r;
    r.name = name;
    r.tol = tol;
    try {
      r.value = body(r);
      r.pass = std::isfinite(r.value) && r.value <= tol;
    } catch (const SpectralError& e) {
      r.pass = false;
      r.error = e.code();
      r.detail = e.what();
    }
    out_.push_back(std::move(r));
  }

private:
  std::vector<CheckResult>& out_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const CoefficientSequence& coeffs, const VerifyOptions& options) {
  std::vector<CheckResult> results;
  Suite suite(results);
  const JostOptions& jost = options.evaluation.jost;
  const bool rho = coeffs.has_rho();
  const std::vector<cplx> samples{{1.0, 0.0}, {1.5, 0.5}, {-1.0, 0.5}, {0.5, -1.0}};

  suite.run("multipliers: mu+ mu- = -1, |mu+| < 1 < |mu-|", 1e-13, [&](CheckResult& r) {
    double worst = 0.0;
    for (cplx l : samples) {
      const auto md = multipliers(l, jost.eps_ess);
      worst = std::max(worst, std::abs(md.mu_plus * md.mu_minus + 1.0));
      if (!(std::abs(md.mu_plus) < 1.0 && std::abs(md.mu_minus) > 1.0)) return 1.0;
    }
    r.detail = "max |mu+ mu- + 1| = " + fmt(worst);
    return worst;
  });

  suite.run("jost: Volterra plug-back residual", 1e-10, [&](CheckResult& r) {
    double worst = 0.0;
    for (cplx l : samples) {
      const auto pair = solve_jost_pair(l, coeffs, jost);
      worst = std::max({worst, jost_plugback_residual(Side::plus, pair.md, coeffs, pair.zhat_plus, 16),
                        jost_plugback_residual(Side::minus, pair.md, coeffs, pair.zhat_minus, 16)});
    }
    r.detail = "first 16 sites each side";
    return worst;
  });

  suite.run("jost: Wronskian constant on [-20, 20]", 1e-10, [&](CheckResult& r) {
    double worst = 0.0;
    JostOptions wide = jost;
    wide.window = std::max(jost.window, 21L);
    for (cplx l : samples) {
      const auto pair = solve_jost_pair(l, coeffs, wide);
      const cplx w0 = wronskian(pair.z_plus, pair.z_minus, 0);
      for (long n = -20; n <= 20; ++n) worst = std::max(worst, rel(wronskian(pair.z_plus, pair.z_minus, n), w0));
    }
    r.detail = "max relative variation over " + std::to_string(samples.size()) + " values of lambda";
    return worst;
  });

  if (rho) {
    suite.run("jost: z+ and z- nonvanishing, ratio signs (lambda = 1)", 0.0, [&](CheckResult& r) {
      const auto rep = check_nonvanishing(solve_jost_pair(1.0, coeffs, jost), 64);
      r.detail = rep.detail;
      return rep.pass ? 0.0 : 1.0;
    });
  }

  suite.run("evans: reconstructed (z0+, z-1+) matches scalar Jost (lambda = 1)", 1e-9, [&](CheckResult& r) {
    const auto pair = solve_jost_pair(1.0, coeffs, jost);
    const auto mpair = solve_matrix_jost(1.0, coeffs, jost);
    const Vec2 y = mpair.reconstructed(Side::plus, 0);
    const Vec2 ym = mpair.reconstructed(Side::minus, 0);
    r.detail = "both sides";
    return std::max({rel(y(0), pair.z_plus.at(0)), rel(y(1), pair.z_plus.at(-1)), rel(ym(0), pair.z_minus.at(0)),
                     rel(ym(1), pair.z_minus.at(-1))});
  });

  suite.run("evans = jost", 1e-8, [&](CheckResult& r) {
    double worst = 0.0;
    for (cplx l : samples) {
      worst = std::max(worst, rel(evans_function(l, coeffs, jost), jost_function(l, coeffs, jost)));
    }
    r.detail = "relative, " + std::to_string(samples.size()) + " values of lambda";
    return worst;
  });

  suite.run("fredholm: det(I - T_N) = det(I - K_N)", 1e-12, [&](CheckResult& r) {
    const auto rep = build_T_and_check(1.0, coeffs, options.fredholm_n_quick, jost.eps_ess);
    r.detail = "N = " + std::to_string(options.fredholm_n_quick) + ", off-block " + fmt(rep.max_off_block);
    return rel(rep.det_T, rep.det_K);
  });

  for (cplx l : samples) {
    std::ostringstream name;
    name << "five-function agreement at lambda = " << l.real() << (l.imag() < 0 ? "" : "+") << l.imag() << "i";
    suite.run(name.str(), options.evaluation.cross_tol, [&](CheckResult& r) {
      const auto rec = evaluate_all(l, coeffs, options.evaluation);
      r.detail = std::to_string(rec.available().size()) + " functions";
      return rec.max_pairwise_gap;
    });
  }

  suite.run("holomorphy: Cauchy mean value of E at 1.5, radius 0.1", 1e-6, [&](CheckResult& r) {
    const cplx center = 1.5;
    cplx mean = 0.0;
    const int m = 64;
    for (int j = 0; j < m; ++j) {
      mean += evans_function(center + 0.1 * std::polar(1.0, 2 * std::numbers::pi * j / m), coeffs, jost);
    }
    mean /= static_cast<double>(m);
    const cplx direct = evans_function(center, coeffs, jost);
    r.detail = "64 samples";
    return std::abs(mean - direct) / std::max(1.0, std::abs(direct));
  });

  if (rho) {
    suite.run("reflection: E(conj lambda) = conj E(lambda)", 1e-12, [&](CheckResult& r) {
      double worst = 0.0;
      for (cplx l : samples) {
        worst = std::max(worst, rel(evans_function(std::conj(l), coeffs, jost), std::conj(evans_function(l, coeffs, jost))));
      }
      r.detail = "real coefficients";
      return worst;
    });

    suite.run("contfrac: ratio identities at lambda in {0.5, 1, 2}", 1e-8, [&](CheckResult& r) {
      double worst = 0.0;
      for (double l : {0.5, 1.0, 2.0}) {
        const auto rep = ratio_identity_check(l, coeffs, 1e-8, false, options.evaluation.cf, jost);
        worst = std::max({worst, rep.plus_residual, rep.minus_residual, rep.recurrence_residual});
      }
      r.detail = "v0+ = lambda/rho0 + g+, v0- = -g-, recurrences";
      return worst;
    });

    suite.run("contfrac: g(1e-4) near 1, g(1e4) near 0", 0.0, [&](CheckResult& r) {
      double small = 0.0, large = 0.0;
      for (Side s : {Side::plus, Side::minus}) {
        small = std::max(small, std::abs(continued_fraction(s, 1e-4, coeffs, options.evaluation.cf).value - 1.0));
        large = std::max(large, std::abs(continued_fraction(s, 1e4, coeffs, options.evaluation.cf).value));
      }
      r.detail = "|g(1e-4) - 1| = " + fmt(small) + ", |g(1e4)| = " + fmt(large);
      return (small <= 1e-2 && large <= 1e-3) ? 0.0 : 1.0;
    });
  }

  if (options.spectral_search && rho && coeffs.rho(0) < 0.0) {
    std::optional<EigenvalueResult> found;
    suite.run("spectrum: bisection eigenvalue, eigensequence residual", 1e-6, [&](CheckResult& r) {
      found = find_real_eigenvalue(coeffs, {}, options.evaluation);
      std::ostringstream d;
      d.precision(17);
      d << "lambda* = " << found->lambda_star.real();
      r.detail = d.str();
      return found->residual;
    });
    if (found) {
      const double star = found->lambda_star.real();
      suite.run("spectrum: five functions vanish at lambda*", 1e-5, [&](CheckResult& r) {
        r.detail = "max |value| / scale, scale = " + fmt(found->scale);
        return found->max_scaled_value;
      });
      suite.run("spectrum: Evans refinement moves lambda*", 1e-8, [&](CheckResult& r) {
        const auto ref = refine_zero(coeffs, star, 0.5, 100, jost);
        if (!ref.converged) fail(ErrorCode::non_convergence, "refinement: " + ref.detail);
        r.detail = std::to_string(ref.iterations) + " secant steps";
        return std::abs(ref.lambda - star);
      });
      suite.run("spectrum: winding number over [0.1, 5] x [-1, 1]i is 1", 0.0, [&](CheckResult& r) {
        const auto w = winding_number(coeffs, {0.1, -1.0}, {std::max(5.0, 2 * star), 1.0}, 32, jost);
        r.detail = "winding " + std::to_string(w.winding) + ", min |E| on contour " + fmt(w.min_abs_boundary);
        return std::abs(w.winding - 1.0);
      });
      suite.run("spectrum: finite-section oracle at N = 128", 1e-4, [&](CheckResult& r) {
        double previous = std::numeric_limits<double>::infinity();
        double err = 0.0;
        for (long N : {32L, 64L, 128L}) {
          const auto roots = finite_section_oracle(coeffs, N, std::max(10.0, 2 * star));
          if (roots.empty()) fail(ErrorCode::non_convergence, "no positive root at N = " + std::to_string(N));
          err = std::abs(roots.back() - star);
          // Non-increasing up to rounding once the section has converged.
          if (err > previous + 1e-12) r.detail = "error grew at N = " + std::to_string(N) + "; ";
          previous = err;
        }
        r.detail += "|lambda_128 - lambda*| = " + fmt(err);
        return r.detail.find("grew") == std::string::npos ? err : 1.0;
      });
      if (options.expected_eigenvalue) {
        suite.run("spectrum: recorded eigenvalue reproduced", 1e-8, [&](CheckResult& r) {
          r.detail = "against the supplied report";
          return std::abs(*options.expected_eigenvalue - found->lambda_star);
        });
      }
    }
  }
  return results;
}

}  // namespace euler_spectra
