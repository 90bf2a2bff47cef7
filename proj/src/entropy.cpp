#include "vnl/entropy.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "vnl/errors.hpp"
#include "vnl/numerics.hpp"

namespace vnl {

namespace {

constexpr double kMaxEntropyTail = 1e-3;
constexpr double kMaxWehrlTail = 1e-10;

const double kLnPi = std::log(std::numbers::pi);

// Largest change of -p ln p over [p - delta, p + delta] intersected with [0, 1].
double term_sensitivity(double p, double delta) {
  const double h = entropy_term(p);
  const double up = entropy_term(std::min(p + delta, 1.0));
  const double down = entropy_term(std::max(p - delta, 0.0));
  double worst = std::max(std::abs(up - h), std::abs(down - h));
  // -p ln p peaks at 1/e; an interval straddling it can exceed both endpoints.
  if (p - delta < 1.0 / std::numbers::e && p + delta > 1.0 / std::numbers::e) {
    worst = std::max(worst, std::abs(1.0 / std::numbers::e - h));
  }
  return worst;
}

struct WehrlTail {
  double mass = 0.0;
  double entropy = 0.0;
};

WehrlTail coherent_tail(double radius) {
  const double ec = std::erfc(radius);
  // Mass outside the square; entropy bound uses the inscribed disk.
  return {ec * (2.0 - ec), std::exp(-radius * radius) * (radius * radius + 1.0 + kLnPi)};
}

WehrlTail envelope_tail(const std::vector<double>& populations, double a) {
  int support = static_cast<int>(populations.size()) - 1;
  while (support > 0 && populations[support] <= 0.0) --support;
  double mass_full = 0.0;
  double sqrt_term = 0.0;
  for (int n = 0; n <= support; ++n) {
    mass_full += gamma_q(n + 1.0, a * a);
    const double s = 0.5 * n + 1.0;
    const double log_coeff = (0.5 * n + 1.0) * std::numbers::ln2 + std::lgamma(s) - 0.5 * std::lgamma(n + 1.0);
    sqrt_term += std::exp(log_coeff) * gamma_q(s, 0.5 * a * a);
  }
  const double mass = std::min(fock_envelope_tail(populations, a), mass_full);
  // -(Q/pi) ln(Q/pi) = (Q/pi) ln pi - (Q ln Q)/pi and -Q ln Q <= (2/e) sqrt(Q).
  return {mass, kLnPi * mass_full + (2.0 / std::numbers::e) * sqrt_term};
}

}  // namespace

EntropyResult lattice_entropy(const LatticeDistribution& dist) {
  const double eps = dist.tail_mass_bound();
  if (eps > kMaxEntropyTail) {
    throw PrecisionError("lattice_entropy: tail mass bound " + std::to_string(eps) + " exceeds 1e-3");
  }
  double value = 0.0;
  double carry = 0.0;
  double cell_budget = 0.0;
  const CellErrorModel& err = dist.cell_error();
  for (double p : dist.probs()) {
    const double y = entropy_term(p) - carry;
    const double t = value + y;
    carry = (t - value) - y;
    value = t;
    cell_budget += term_sensitivity(p, err.absolute + err.relative * p);
  }
  double tail_budget = 0.0;
  if (eps > 0.0) {
    const double p_edge = std::max(dist.max_boundary_probability(), DBL_MIN);
    tail_budget = eps * std::log(1.0 / p_edge) + entropy_term(std::min(eps, 1.0));
  }
  std::string backend(to_string(dist.backend()));
  if (dist.backend() == Backend::quadrature) backend += "(order=" + std::to_string(dist.quad_order()) + ")";
  return {std::max(value, 0.0), eps, cell_budget + tail_budget, backend};
}

EntropyResult wehrl_entropy(const StateSpec& state, double radius, int order) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("wehrl_entropy: radius must be positive");
  const Complex centre = husimi_centroid(state);
  const auto* coherent = std::get_if<CoherentParam>(&state);

  WehrlTail tail;
  if (coherent != nullptr) {
    tail = coherent_tail(radius);
  } else {
    // The number-state envelope is centred on the origin.
    const double a = radius - std::max(std::abs(centre.real()), std::abs(centre.imag()));
    if (!(a > 0.0)) throw PrecisionError("wehrl_entropy: integration square does not cover the origin");
    tail = envelope_tail(fock_populations(state), a);
  }
  if (tail.mass > kMaxWehrlTail) {
    throw PrecisionError("wehrl_entropy: envelope mass " + std::to_string(tail.mass) + " beyond radius " +
                             std::to_string(radius) + " exceeds 1e-10",
                         tail.mass, kMaxWehrlTail);
  }

  const auto density = [&](Complex gamma) {
    if (coherent != nullptr) {
      const double d2 = std::norm(gamma - coherent->z);
      return std::exp(-d2) / std::numbers::pi * (d2 + kLnPi);
    }
    const double q = husimi_q(gamma, state);
    if (q <= 0.0) return 0.0;
    const double w = q / std::numbers::pi;
    return -w * std::log(w);
  };
  const int panels = static_cast<int>(std::ceil(2.0 * radius));
  const auto integrate = [&](int n) {
    const QuadratureRule xs = composite_gauss_legendre(n, centre.real() - radius, centre.real() + radius, panels);
    const QuadratureRule ys = composite_gauss_legendre(n, centre.imag() - radius, centre.imag() + radius, panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.nodes.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < ys.nodes.size(); ++j) row += ys.weights[j] * density({xs.nodes[i], ys.nodes[j]});
      sum += xs.weights[i] * row;
    }
    return sum;
  };
  const double coarse = integrate(order);
  const double fine = integrate(2 * order);
  return {fine, tail.mass, std::abs(fine - coarse) + tail.entropy,
          "wehrl_quadrature(order=" + std::to_string(order) + ",panels=" + std::to_string(panels) + ")"};
}

double wehrl_reference() { return 1.0 + kLnPi; }

}  // namespace vnl
