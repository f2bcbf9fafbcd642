#ifndef EULER_SPECTRA_LATTICE_FLOW_HPP
#define EULER_SPECTRA_LATTICE_FLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "euler_spectra/common.hpp"

namespace euler_spectra {

struct LatticeVector {
  long x = 0;
  long y = 0;

  bool is_zero() const { return x == 0 && y == 0; }
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

inline long dot(LatticeVector a, LatticeVector b) { return a.x * b.x + a.y * b.y; }
inline long norm2(LatticeVector a) { return dot(a, a); }
// a ∧ b = det [a b] with a, b as columns.
inline long wedge(LatticeVector a, LatticeVector b) { return a.x * b.y - b.x * a.y; }
inline LatticeVector shifted(LatticeVector q, long n, LatticeVector p) {
  return {q.x + n * p.x, q.y + n * p.y};
}

std::string to_string(LatticeVector v);

// Outcome of the slice admissibility test ||q|| < ||p|| < ||q + n p|| (n != 0).
struct AdmissibilityReport {
  bool parallel = false;        // q is parallel to p, so the slice operator vanishes
  bool norm_condition = false;  // ||q|| < ||p||
  bool shift_condition = false; // ||q + n p|| > ||p|| for all n != 0
  std::optional<long> first_violation;  // smallest |n| (negative first) breaking the shift condition
  long checked_up_to = 0;       // explicit |n| horizon; beyond it the quadratic bound is positive

  bool admissible() const { return !parallel && norm_condition && shift_condition; }
  std::string summary() const;
};

// Throws DegenerateSlice when p ∧ q = 0 and InvalidInput when p = 0.
AdmissibilityReport validate_pair(LatticeVector p, LatticeVector q);

// Amplitude α for which the slice operator becomes (S - S*) diag{ρ_n}.
double normalization_alpha(LatticeVector p, LatticeVector q);

// Coefficient of the vorticity quadratic nonlinearity; zero if either argument is zero.
double beta_coefficient(LatticeVector p, LatticeVector q);

struct FlowConfig {
  LatticeVector p;
  LatticeVector q;
  double alpha = 0.0;

  // Validates admissibility and fills alpha from the normalization.
  static FlowConfig make(LatticeVector p, LatticeVector q);
};

// ρ_n, b_n(λ), c_n for the difference equation z_{n-1} - z_{n+1} = (λ - b_n c_n) z_n.
//
// Three sources are supported:
//  * flow:    ρ_n = 1 - ||p||²/||q + n p||², with b_n = -λ sqrt(1-ρ_n)/ρ_n, c_n = sqrt(1-ρ_n);
//  * free:    ρ_n ≡ 1, so every coupling vanishes;
//  * general: arbitrary b_n(λ) = b0_n + λ b1_n and c_n on [-window, window], identically
//             zero outside (no ρ, hence no continued fractions).
class CoefficientSequence {
public:
  enum class Mode { flow, free, general };

  static CoefficientSequence from_flow(const FlowConfig& config, long window);
  static CoefficientSequence free_lattice(long window = 0);
  // All vectors have length 2*window + 1 and are indexed from -window.
  static CoefficientSequence general(long window, std::vector<cplx> b_constant,
                                     std::vector<cplx> b_slope, std::vector<cplx> c,
                                     double tail_constant);

  Mode mode() const { return mode_; }
  bool has_rho() const { return mode_ != Mode::general; }
  long window() const { return window_; }
  // C with |1 - ρ_n| <= C / n² for |n| > window (flow), or the declared bound (general).
  double tail_constant() const { return tail_constant_; }
  const std::optional<FlowConfig>& flow() const { return flow_; }

  double rho(long n) const;
  // (1 - ρ_n) / ρ_n, so that b_n c_n = -λ s_n.
  double coupling_strength(long n) const;

  cplx b(long n, cplx lambda) const;
  cplx c(long n) const;
  cplx coupling(long n, cplx lambda) const;  // b_n c_n
  // λ - b_n c_n, the diagonal of the three-term recurrence (λ/ρ_n in ρ-modes).
  cplx recurrence_diagonal(long n, cplx lambda) const;

  // Σ b_k c_k over k >= N (plus) or k <= -N (minus).
  cplx tail_coupling_sum(Side side, long N, cplx lambda) const;
  // Σ_{j>=0} b_k c_k ratio^j with k = ±(N + j), for |ratio| < 1.
  cplx tail_geometric_sum(Side side, long N, cplx lambda, cplx ratio) const;
  // Σ |b_k c_k| over the same tail; used for the contraction test.
  double tail_abs_sum(Side side, long N, cplx lambda) const;

  // Largest |n| carrying a nonzero coupling, if finite.
  std::optional<long> support() const;

  std::string describe() const;

private:
  double tail_strength_sum(Side side, long N) const;

  Mode mode_ = Mode::free;
  long window_ = 0;
  double tail_constant_ = 0.0;
  std::optional<FlowConfig> flow_;
  std::vector<double> rho_;  // flow mode, indices -window..window
  std::vector<cplx> b_constant_, b_slope_, c_;  // general mode
};

CoefficientSequence make_coefficients(const FlowConfig& config, long window);

// Applies (S - S*) diag{ρ_n} to w on [-N, N] (zero outside).
std::vector<double> apply_slice_rho(const CoefficientSequence& coeffs, long N,
                                    const std::vector<double>& w);
// Applies α (S - S*) diag{β(p, q + n p)} to w on [-N, N] (zero outside).
std::vector<double> apply_slice_beta(const FlowConfig& config, long N,
                                     const std::vector<double>& w);

}  // namespace euler_spectra

#endif
