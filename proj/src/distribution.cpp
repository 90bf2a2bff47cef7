#include "vnl/distribution.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "vnl/errors.hpp"
#include "vnl/numerics.hpp"

namespace vnl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbSlack = 1e-15;
constexpr double kNormSlack = 1e-10;

enum Side { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

// Overlap <g1|g2> of two coherent states.
Complex coherent_overlap(Complex g1, Complex g2) {
  return std::exp(-0.5 * std::norm(g1) - 0.5 * std::norm(g2) + std::conj(g1) * g2);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::closed_form ? "closed_form" : "quadrature";
}

// ---------------------------------------------------------------------------

ClosedFormCell ClosedFormCell::at(const LatticeConfig& cfg, Complex z, LatticeIndex idx) {
  const Complex alpha = lattice_point(cfg, idx);
  return {alpha.real() - z.real(), alpha.imag() - z.imag(), cfg.half_width_x(), cfg.half_width_p()};
}

double ClosedFormCell::x_factor() const {
  return 0.5 * erf_interval(rho_m - half_width_x, rho_m + half_width_x);
}

double ClosedFormCell::p_factor() const {
  return 0.5 * erf_interval(sigma_n - half_width_p, sigma_n + half_width_p);
}

double closed_form_prob(const LatticeConfig& cfg, const CoherentParam& z, LatticeIndex idx) {
  return ClosedFormCell::at(cfg, z.z, idx).probability();
}

// ---------------------------------------------------------------------------

LatticeDistribution::LatticeDistribution(LatticeConfig config, LatticeWindow window, std::vector<double> probs,
                                         double tail_mass_bound, Backend backend, int quad_order,
                                         CellErrorModel cell_error)
    : config_(config),
      window_(window),
      probs_(std::move(probs)),
      tail_mass_bound_(tail_mass_bound),
      backend_(backend),
      quad_order_(quad_order),
      cell_error_(cell_error) {
  if (window_.m_min > window_.m_max || window_.n_min > window_.n_max) {
    throw DomainError("LatticeDistribution: empty window");
  }
  if (probs_.size() != window_.cell_count()) {
    throw DomainError("LatticeDistribution: probability count does not match window");
  }
  if (!(tail_mass_bound_ >= 0.0) || !std::isfinite(tail_mass_bound_)) {
    throw DomainError("LatticeDistribution: tail mass bound must be finite and >= 0");
  }
  for (double& p : probs_) {
    if (!(p >= -kProbSlack && p <= 1.0 + kProbSlack)) {
      throw PrecisionError("LatticeDistribution: probability " + fmt_double(p) + " outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  const double sum = total();
  if (sum > 1.0 + kNormSlack) {
    throw PrecisionError("LatticeDistribution: probabilities sum to " + fmt_double(sum) + " > 1", sum, 1.0);
  }
  if (sum + tail_mass_bound_ < 1.0 - kNormSlack) {
    throw PrecisionError("LatticeDistribution: window mass plus tail bound " + fmt_double(sum + tail_mass_bound_) +
                             " does not reach 1",
                         sum, tail_mass_bound_);
  }
}

double LatticeDistribution::at(LatticeIndex idx) const {
  return window_.contains(idx) ? probs_[window_.offset(idx)] : 0.0;
}

double LatticeDistribution::total() const {
  // Compensated sum; the normalization checks sit near machine precision.
  double sum = 0.0;
  double carry = 0.0;
  for (double p : probs_) {
    const double y = p - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double LatticeDistribution::max_boundary_probability() const {
  double best = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    const LatticeIndex idx = window_.index_at(k);
    if (idx.m == window_.m_min || idx.m == window_.m_max || idx.n == window_.n_min || idx.n == window_.n_max) {
      best = std::max(best, probs_[k]);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

CellQuadrature::CellQuadrature(const LatticeConfig& cfg, int order) : cfg_(cfg), order_(order) {
  if (order < 2) throw DomainError("cell quadrature: order must be >= 2");
  const QuadratureRule lo = gauss_legendre(order, -1.0, 1.0);
  const QuadratureRule hi = gauss_legendre(2 * order, -1.0, 1.0);
  x_lo_ = lo.nodes;
  w_lo_ = lo.weights;
  x_hi_ = hi.nodes;
  w_hi_ = hi.weights;
}

CellAverage CellQuadrature::average(const StateSpec& state, LatticeIndex idx) const {
  const Complex alpha = lattice_point(cfg_, idx);
  const double wx = cfg_.half_width_x();
  const double wp = cfg_.half_width_p();
  const auto integrate = [&](const std::vector<double>& x, const std::vector<double>& w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        row += w[j] * husimi_q(alpha + Complex{wx * x[i], wp * x[j]}, state);
      }
      sum += w[i] * row;
    }
    // Reference weights integrate to 2 per axis.
    return 0.25 * sum;
  };
  const double coarse = integrate(x_lo_, w_lo_);
  const double fine = integrate(x_hi_, w_hi_);
  const double diff = std::abs(fine - coarse);
  if (diff > kOrderDoublingTolerance) {
    throw PrecisionError("cell (" + std::to_string(idx.m) + "," + std::to_string(idx.n) +
                             "): quadrature orders disagree by " + fmt_double(diff),
                         coarse, fine);
  }
  return {fine, diff};
}

double averaged_prob_quadrature(const LatticeConfig& cfg, const StateSpec& state, LatticeIndex idx, int order) {
  return CellQuadrature(cfg, order).average(state, idx).value;
}

// ---------------------------------------------------------------------------

LatticeDistribution build_distribution(const LatticeConfig& cfg, const StateSpec& state, double tail_tol, int order,
                                       BackendChoice choice, int max_extent) {
  if (!(tail_tol > 0.0 && tail_tol <= 1e-3)) {
    throw DomainError("build_distribution: tail_tol must lie in (0, 1e-3]");
  }
  const auto* coherent = std::get_if<CoherentParam>(&state);
  Backend backend = Backend::quadrature;
  if (choice == BackendChoice::closed_form || (choice == BackendChoice::automatic && coherent != nullptr)) {
    backend = Backend::closed_form;
  }
  if (backend == Backend::closed_form && coherent == nullptr) {
    throw DomainError("build_distribution: closed-form backend needs a coherent state");
  }

  std::optional<CellQuadrature> quadrature;
  if (backend == Backend::quadrature) quadrature.emplace(cfg, order);
  const std::vector<double> populations = fock_populations(state);
  const double wx = cfg.half_width_x();
  const double wp = cfg.half_width_p();

  double max_difference = 0.0;
  const auto cell_prob = [&](LatticeIndex idx) {
    if (backend == Backend::closed_form) return closed_form_prob(cfg, *coherent, idx);
    const CellAverage avg = quadrature->average(state, idx);
    max_difference = std::max(max_difference, avg.difference);
    return avg.value;
  };

  // Certified mass beyond each side of the window (whole half-plane past that edge).
  const auto side_tails = [&](const LatticeWindow& w) {
    std::array<double, 4> t{};
    if (coherent != nullptr) {
      const ClosedFormCell lo = ClosedFormCell::at(cfg, coherent->z, {w.m_min, w.n_min});
      const ClosedFormCell hi = ClosedFormCell::at(cfg, coherent->z, {w.m_max, w.n_max});
      t[kLeft] = 0.5 * erf_interval(-kInf, lo.rho_m - wx);
      t[kRight] = 0.5 * erf_interval(hi.rho_m + wx, kInf);
      t[kBottom] = 0.5 * erf_interval(-kInf, lo.sigma_n - wp);
      t[kTop] = 0.5 * erf_interval(hi.sigma_n + wp, kInf);
      return t;
    }
    // Distances from the origin (centre of the number-state envelope) to each edge.
    const std::array<double, 4> dist{(1.0 - 2.0 * w.m_min) * wx, (2.0 * w.m_max + 1.0) * wx,
                                     (1.0 - 2.0 * w.n_min) * wp, (2.0 * w.n_max + 1.0) * wp};
    for (int s = 0; s < 4; ++s) t[s] = fock_envelope_tail(populations, dist[s]);
    return t;
  };
  const auto total_tail = [&](const LatticeWindow& w, const std::array<double, 4>& t) {
    double sum = t[0] + t[1] + t[2] + t[3];
    if (coherent == nullptr) {
      const double nearest = std::min({(1.0 - 2.0 * w.m_min) * wx, (2.0 * w.m_max + 1.0) * wx,
                                       (1.0 - 2.0 * w.n_min) * wp, (2.0 * w.n_max + 1.0) * wp});
      sum = std::min(sum, fock_envelope_tail(populations, nearest));
    }
    return std::min(sum, 1.0);
  };

  const LatticeIndex start = nearest_lattice_index(cfg, husimi_centroid(state));
  const auto out_of_range = [max_extent](const LatticeWindow& w) {
    return w.m_min < -max_extent || w.m_max > max_extent || w.n_min < -max_extent || w.n_max > max_extent;
  };
  LatticeWindow window{start.m, start.m, start.n, start.n};
  if (out_of_range(window)) {
    throw DivergenceError("build_distribution: state centroid lies beyond the maximum extent");
  }

  std::map<LatticeIndex, double> cells;
  std::array<double, 4> tails{};
  while (true) {
    for (int m = window.m_min; m <= window.m_max; ++m) {
      for (int n = window.n_min; n <= window.n_max; ++n) {
        const LatticeIndex idx{m, n};
        if (!cells.contains(idx)) cells.emplace(idx, cell_prob(idx));
      }
    }
    std::array<double, 4> edge{};
    for (int n = window.n_min; n <= window.n_max; ++n) {
      edge[kLeft] += cells.at({window.m_min, n});
      edge[kRight] += cells.at({window.m_max, n});
    }
    for (int m = window.m_min; m <= window.m_max; ++m) {
      edge[kBottom] += cells.at({m, window.n_min});
      edge[kTop] += cells.at({m, window.n_max});
    }
    tails = side_tails(window);

    std::array<bool, 4> grow{};
    bool any = false;
    for (int s = 0; s < 4; ++s) {
      grow[s] = edge[s] >= tail_tol / 40.0 || tails[s] > tail_tol / 4.0;
      any = any || grow[s];
    }
    if (!any) break;
    window.m_min -= grow[kLeft] ? 1 : 0;
    window.m_max += grow[kRight] ? 1 : 0;
    window.n_min -= grow[kBottom] ? 1 : 0;
    window.n_max += grow[kTop] ? 1 : 0;
    if (out_of_range(window)) {
      throw DivergenceError("build_distribution: window exceeds |m|,|n| <= " + std::to_string(max_extent) +
                            " before the tail tolerance " + fmt_double(tail_tol) + " was met");
    }
  }

  std::vector<double> probs(window.cell_count());
  for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = cells.at(window.index_at(k));

  CellErrorModel error;
  error.relative = 4.0 * DBL_EPSILON;
  error.absolute = backend == Backend::closed_form ? 4.0 * DBL_EPSILON : max_difference + 4.0 * DBL_EPSILON;
  return LatticeDistribution(cfg, window, std::move(probs), total_tail(window, tails), backend,
                             backend == Backend::quadrature ? order : 0, error);
}

double unaveraged_q(const LatticeConfig& cfg, const StateSpec& state, LatticeIndex idx) {
  return husimi_q(lattice_point(cfg, idx), state);
}

Complex orthonormality_integral(const LatticeConfig& cfg, LatticeIndex a, LatticeIndex b, int order) {
  if (order < 2) throw DomainError("orthonormality_integral: order must be >= 2");
  const Complex alpha_a = lattice_point(cfg, a);
  const Complex alpha_b = lattice_point(cfg, b);
  const double wx = cfg.half_width_x();
  const double wp = cfg.half_width_p();
  // D(alpha) D(beta) = D(alpha + beta) exp(i Im(alpha conj(beta))).
  const auto integrand = [&](Complex beta) {
    const double phase = std::imag(alpha_b * std::conj(beta)) - std::imag(alpha_a * std::conj(beta));
    return std::polar(1.0, phase) * coherent_overlap(alpha_a + beta, alpha_b + beta);
  };
  const auto integrate = [&](int n) {
    const QuadratureRule rule = gauss_legendre(n, -1.0, 1.0);
    Complex sum{};
    for (int i = 0; i < n; ++i) {
      Complex row{};
      for (int j = 0; j < n; ++j) {
        row += rule.weights[j] * integrand({wx * rule.nodes[i], wp * rule.nodes[j]});
      }
      sum += rule.weights[i] * row;
    }
    return 0.25 * sum;
  };
  const Complex coarse = integrate(order);
  const Complex fine = integrate(2 * order);
  const double diff = std::abs(fine - coarse);
  if (diff > kOrderDoublingTolerance) {
    throw PrecisionError("orthonormality_integral: quadrature orders disagree by " + fmt_double(diff),
                         std::abs(coarse), std::abs(fine));
  }
  return fine;
}

Eigen::MatrixXcd orthonormality_gram(const LatticeConfig& cfg, int radius, int order) {
  std::vector<LatticeIndex> indices;
  for (int m = -radius; m <= radius; ++m) {
    for (int n = -radius; n <= radius; ++n) indices.push_back({m, n});
  }
  const auto dim = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd gram(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      gram(i, j) = orthonormality_integral(cfg, indices[i], indices[j], order);
    }
  }
  return gram;
}

}  // namespace vnl
