#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vnl/lattice.hpp"

namespace vnl {

inline constexpr int kDefaultFockTruncation = 64;

/// Coherent state |z> = D(z)|0>.
struct CoherentParam {
  Complex z;
};

/// Pure state in the truncated number basis, normalized to 1e-10.
class FockState {
 public:
  /// Throws DomainError if the coefficients are empty, non-finite or not normalized.
  /// `truncation_tail` records the probability mass dropped when the state was truncated.
  explicit FockState(std::vector<Complex> coeffs, double truncation_tail = 0.0);

  /// Number state |n>.
  static FockState number(int n);

  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Largest basis index N.
  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  double truncation_tail() const { return truncation_tail_; }

 private:
  std::vector<Complex> coeffs_;
  double truncation_tail_;
};

/// Density matrix in the number basis: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws DomainError when any invariant fails.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix from_pure(const FockState& state);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int truncation() const { return static_cast<int>(entries_.rows()) - 1; }

 private:
  Eigen::MatrixXcd entries_;
};

using StateSpec = std::variant<CoherentParam, FockState, DensityMatrix>;

/// <gamma|psi> = exp(-|gamma|^2/2) sum_n c_n conj(gamma)^n / sqrt(n!).
Complex coherent_amplitude(Complex gamma, const FockState& state);

/// Husimi function |<gamma|psi>|^2, or <gamma|rho|gamma> for a density matrix.
double husimi_q(Complex gamma, const StateSpec& state);

/// Coefficients of |z> up to |N>, renormalized. Throws PrecisionError if the
/// dropped Poisson tail exceeds 1e-14.
FockState fock_expand_coherent(Complex z, int truncation = kDefaultFockTruncation);

/// Normalized |z> + sign |-z> in the truncated number basis.
FockState make_cat_state(Complex z, int sign, int truncation = kDefaultFockTruncation);

/// Mean of the annihilation operator, i.e. the centroid of the Husimi function.
Complex husimi_centroid(const StateSpec& state);

/// Number-basis populations <n|rho|n>; empty for CoherentParam.
std::vector<double> fock_populations(const StateSpec& state);

/// Largest n with nonzero population; -1 for CoherentParam.
int fock_support(const StateSpec& state);

/// Upper bound on (1/pi) * integral of Q over |gamma| > radius for a state
/// given by its number populations. Uses Q <= sum_{n<=K} |<gamma|n>|^2 on the
/// low block and the trace of the high block, optimized over the split K.
double fock_envelope_tail(std::span<const double> populations, double radius);

/// Short human-readable label, e.g. "coherent:0.5,0" or "fock:N=3".
std::string describe(const StateSpec& state);

/// Parses `coherent:RE,IM`, `fock:n`, `cat:RE,IM,+|-`, `mixed:PATH`.
/// Throws UsageError for malformed text, IoError when a file cannot be read.
StateSpec parse_state_spec(const std::string& text, int truncation = kDefaultFockTruncation);

/// Reads a density matrix: one row per line, entries `re+imi` separated by whitespace.
DensityMatrix read_density_matrix(const std::string& path);
DensityMatrix parse_density_matrix(const std::string& text);

}  // namespace vnl
