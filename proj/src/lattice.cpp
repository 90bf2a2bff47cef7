#include "vnl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vnl/errors.hpp"

namespace vnl {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("LatticeConfig: ") + name + " must be positive and finite");
  }
}

}  // namespace

LatticeConfig::LatticeConfig(double lambda, double hbar, double b, double c)
    : lambda_(lambda),
      hbar_(hbar),
      b_(b),
      c_(c),
      half_width_x_(0.5 * c * kSqrtPi),
      half_width_p_(0.5 * kSqrtPi / c) {}

LatticeConfig LatticeConfig::from_aspect(double c) {
  require_positive(c, "c");
  return LatticeConfig(1.0, 1.0, c * kSqrt2Pi, c);
}

LatticeConfig LatticeConfig::from_physical(double lambda, double hbar, double b) {
  require_positive(lambda, "lambda");
  require_positive(hbar, "hbar");
  require_positive(b, "b");
  return LatticeConfig(lambda, hbar, b, b / (lambda * kSqrt2Pi));
}

double LatticeConfig::momentum_spacing() const { return 2.0 * std::numbers::pi * hbar_ / b_; }

double LatticeConfig::cell_area() const { return b_ * momentum_spacing(); }

Complex lattice_point(const LatticeConfig& cfg, LatticeIndex idx) {
  return {2.0 * idx.m * cfg.half_width_x(), 2.0 * idx.n * cfg.half_width_p()};
}

Complex beta_of_cell_point(const LatticeConfig& cfg, CellPoint pt) {
  const double x_lim = 0.5 * cfg.b();
  const double p_lim = 0.5 * cfg.momentum_spacing();
  // Closed cell; allow rounding at the boundary.
  const double x_slack = 1e-12 * x_lim;
  const double p_slack = 1e-12 * p_lim;
  if (std::abs(pt.x_bar) > x_lim + x_slack || std::abs(pt.p_bar) > p_lim + p_slack) {
    throw DomainError("beta_of_cell_point: point outside the unit cell");
  }
  // Express in units of the half-widths so boundary points map exactly onto the rectangle.
  return {cfg.half_width_x() * (pt.x_bar / x_lim), cfg.half_width_p() * (pt.p_bar / p_lim)};
}

Complex alpha_of_phase_point(const LatticeConfig& cfg, double x, double p) {
  const double scale = 1.0 / (cfg.lambda() * std::numbers::sqrt2);
  return {scale * x, scale * (cfg.lambda() * cfg.lambda() / cfg.hbar()) * p};
}

LatticeIndex nearest_lattice_index(const LatticeConfig& cfg, Complex alpha) {
  static constexpr double kLimit = 1e9;
  const auto to_index = [](double v) {
    return static_cast<int>(std::lround(std::clamp(v, -kLimit, kLimit)));
  };
  return {to_index(alpha.real() / (2.0 * cfg.half_width_x())),
          to_index(alpha.imag() / (2.0 * cfg.half_width_p()))};
}

}  // namespace vnl
