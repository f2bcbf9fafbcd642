#ifndef EULER_SPECTRA_COMMON_HPP
#define EULER_SPECTRA_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace euler_spectra {

using cplx = std::complex<double>;

// Which end of the lattice a Jost solution (or continued fraction) lives on.
enum class Side { plus, minus };

inline int sign_of(Side side) { return side == Side::plus ? 1 : -1; }
inline const char* to_string(Side side) { return side == Side::plus ? "+" : "-"; }

enum class ErrorCode {
  invalid_input,
  degenerate_slice,
  not_admissible,
  essential_spectrum,
  contraction_failure,
  sector_violation,
  non_convergence,
  singular_factorization,
  block_mismatch,
  identity_violation,
  bracket_failure,
  boundary_zero,
  index_out_of_window,
  large_residual,
  precondition,
};

const char* to_string(ErrorCode code);

class SpectralError : public std::runtime_error {
public:
  SpectralError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// A finite piece of a two-sided sequence, indexed by lattice site n.
class IndexedSequence {
public:
  IndexedSequence() = default;
  IndexedSequence(long first, std::vector<cplx> values)
      : first_(first), values_(std::move(values)) {}

  long first() const { return first_; }
  long last() const { return first_ + static_cast<long>(values_.size()) - 1; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  bool contains(long n) const { return !values_.empty() && n >= first_ && n <= last(); }

  cplx at(long n) const;
  cplx& at(long n);

  // Grows the stored range to include n; new slots are zero.
  void extend_to(long n);

  const std::vector<cplx>& values() const { return values_; }

private:
  long first_ = 0;
  std::vector<cplx> values_;
};

}  // namespace euler_spectra

#endif
