#pragma once

#include <compare>
#include <complex>

namespace vnl {

using Complex = std::complex<double>;

struct LatticeIndex {
  int m = 0;
  int n = 0;

  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Point (X, P) of the unit cell in physical units.
struct CellPoint {
  double x_bar = 0.0;
  double p_bar = 0.0;
};

/// Geometry of the von Neumann lattice.
///
/// Physical parameters are the oscillator width lambda, hbar and the position
/// spacing b. Every dimensionless quantity depends only on the aspect ratio
/// c = b / (lambda * sqrt(2 pi)); c = 1 is the square lattice. Half-widths are
/// measured in the dimensionless coherent-state plane (alpha coordinates), so
/// the cell is [-half_width_x, half_width_x] x [-half_width_p, half_width_p]
/// with area pi.
class LatticeConfig {
 public:
  /// lambda = hbar = 1, b = c * sqrt(2 pi).
  static LatticeConfig from_aspect(double c);
  static LatticeConfig from_physical(double lambda, double hbar, double b);
  static LatticeConfig square() { return from_aspect(1.0); }

  double lambda() const { return lambda_; }
  double hbar() const { return hbar_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double half_width_x() const { return half_width_x_; }
  double half_width_p() const { return half_width_p_; }

  /// Momentum spacing 2 pi hbar / b.
  double momentum_spacing() const;
  /// Area of the unit cell in (X, P); equals 2 pi hbar.
  double cell_area() const;

 private:
  LatticeConfig(double lambda, double hbar, double b, double c);

  double lambda_;
  double hbar_;
  double b_;
  double c_;
  double half_width_x_;
  double half_width_p_;
};

/// alpha_mn = (m b + i (2 pi lambda^2 / b) n) / (lambda sqrt 2).
Complex lattice_point(const LatticeConfig& cfg, LatticeIndex idx);

/// beta = (X + i (lambda^2/hbar) P) / (lambda sqrt 2) for a point of the closed
/// unit cell; throws DomainError outside it.
Complex beta_of_cell_point(const LatticeConfig& cfg, CellPoint pt);

/// (x + i (lambda^2/hbar) p) / (lambda sqrt 2).
Complex alpha_of_phase_point(const LatticeConfig& cfg, double x, double p);

/// Index of the cell whose (closed) rectangle contains alpha; ties round half away from zero.
LatticeIndex nearest_lattice_index(const LatticeConfig& cfg, Complex alpha);

}  // namespace vnl
