#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vnl/lattice.hpp"
#include "vnl/states.hpp"

namespace vnl {

inline constexpr int kDefaultQuadOrder = 32;
inline constexpr int kDefaultMaxExtent = 64;
/// Accepted |p(order) - p(2 order)| for a cell integral.
inline constexpr double kOrderDoublingTolerance = 1e-11;

/// Shifted centre and half-widths of one cell in the erf-product formula for
/// a coherent state: p = (1/4) Erf(rho - wx, rho + wx) Erf(sigma - wp, sigma + wp).
struct ClosedFormCell {
  double rho_m = 0.0;
  double sigma_n = 0.0;
  double half_width_x = 0.0;
  double half_width_p = 0.0;

  static ClosedFormCell at(const LatticeConfig& cfg, Complex z, LatticeIndex idx);

  /// Half of the position-direction erf interval (marginal weight of column m).
  double x_factor() const;
  /// Half of the momentum-direction erf interval (marginal weight of row n).
  double p_factor() const;
  double probability() const { return x_factor() * p_factor(); }
};

struct LatticeWindow {
  int m_min = 0;
  int m_max = 0;
  int n_min = 0;
  int n_max = 0;

  int width() const { return m_max - m_min + 1; }
  int height() const { return n_max - n_min + 1; }
  std::size_t cell_count() const { return static_cast<std::size_t>(width()) * height(); }
  bool contains(LatticeIndex idx) const {
    return idx.m >= m_min && idx.m <= m_max && idx.n >= n_min && idx.n <= n_max;
  }
  /// Row-major offset, m outer and n inner, so storage is sorted by (m, n).
  std::size_t offset(LatticeIndex idx) const {
    return static_cast<std::size_t>(idx.m - m_min) * height() + (idx.n - n_min);
  }
  LatticeIndex index_at(std::size_t offset) const {
    return {m_min + static_cast<int>(offset / height()), n_min + static_cast<int>(offset % height())};
  }

  friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;
};

enum class Backend { closed_form, quadrature };
enum class BackendChoice { automatic, closed_form, quadrature };

std::string_view to_string(Backend backend);

/// Per-cell error model: |error(p)| <= absolute + relative * p.
struct CellErrorModel {
  double absolute = 0.0;
  double relative = 0.0;
};

/// Finite window of cell probabilities with a certified bound on the mass outside.
class LatticeDistribution {
 public:
  /// Checks every p in [0, 1], sum <= 1 + 1e-10 and sum + tail >= 1 - 1e-10;
  /// throws PrecisionError otherwise.
  LatticeDistribution(LatticeConfig config, LatticeWindow window, std::vector<double> probs,
                      double tail_mass_bound, Backend backend, int quad_order = 0,
                      CellErrorModel cell_error = {});

  const LatticeConfig& config() const { return config_; }
  const LatticeWindow& window() const { return window_; }
  const std::vector<double>& probs() const { return probs_; }
  double tail_mass_bound() const { return tail_mass_bound_; }
  Backend backend() const { return backend_; }
  int quad_order() const { return quad_order_; }
  const CellErrorModel& cell_error() const { return cell_error_; }

  /// Probability of a cell; 0 outside the window.
  double at(LatticeIndex idx) const;
  double total() const;
  /// Largest probability on the outermost ring of the window.
  double max_boundary_probability() const;

 private:
  LatticeConfig config_;
  LatticeWindow window_;
  std::vector<double> probs_;
  double tail_mass_bound_;
  Backend backend_;
  int quad_order_;
  CellErrorModel cell_error_;
};

double closed_form_prob(const LatticeConfig& cfg, const CoherentParam& z, LatticeIndex idx);

/// Cell average of a Husimi function evaluated with tensor Gauss-Legendre
/// rules of order and 2*order.
struct CellAverage {
  double value = 0.0;       // 2*order estimate
  double difference = 0.0;  // |order - 2*order|
};

class CellQuadrature {
 public:
  /// Throws DomainError for order < 2 or 2*order above the maximum rule order.
  CellQuadrature(const LatticeConfig& cfg, int order);

  /// Throws PrecisionError when the two orders disagree by more than 1e-11.
  CellAverage average(const StateSpec& state, LatticeIndex idx) const;
  int order() const { return order_; }

 private:
  LatticeConfig cfg_;
  int order_;
  std::vector<double> x_lo_, w_lo_, x_hi_, w_hi_;
};

/// Average of the Husimi function over cell (m, n).
double averaged_prob_quadrature(const LatticeConfig& cfg, const StateSpec& state, LatticeIndex idx,
                                int order = kDefaultQuadOrder);

/// Grows a window from the cell containing the Husimi centroid until the
/// boundary ring holds < tail_tol/10 and the mass outside is certified <= tail_tol.
/// Throws DomainError for tail_tol outside (0, 1e-3], DivergenceError when
/// |m| or |n| would exceed max_extent.
LatticeDistribution build_distribution(const LatticeConfig& cfg, const StateSpec& state, double tail_tol,
                                       int order = kDefaultQuadOrder,
                                       BackendChoice choice = BackendChoice::automatic,
                                       int max_extent = kDefaultMaxExtent);

/// Husimi function at the lattice point itself (no cell average).
double unaveraged_q(const LatticeConfig& cfg, const StateSpec& state, LatticeIndex idx);

/// Cell average of <0|D(beta)^dag D(alpha_a)^dag D(alpha_b) D(beta)|0>.
Complex orthonormality_integral(const LatticeConfig& cfg, LatticeIndex a, LatticeIndex b,
                                int order = kDefaultQuadOrder);

/// Gram matrix of orthonormality_integral over |m|, |n| <= radius, indices
/// enumerated with m outer and n inner.
Eigen::MatrixXcd orthonormality_gram(const LatticeConfig& cfg, int radius, int order = kDefaultQuadOrder);

}  // namespace vnl
