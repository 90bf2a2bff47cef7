#include "vnl/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "vnl/errors.hpp"

namespace vnl {

namespace {

// Below this magnitude erf(x2) - erf(x1) has no cancellation worth avoiding.
constexpr double kErfcSwitch = 0.5;

}  // namespace

double erf_interval(double x1, double x2) {
  if (x1 > x2) return -erf_interval(x2, x1);
  if (x1 == x2) return 0.0;
  if (x1 >= kErfcSwitch) return std::erfc(x1) - std::erfc(x2);
  if (x2 <= -kErfcSwitch) return std::erfc(-x2) - std::erfc(-x1);
  return std::erf(x2) - std::erf(x1);
}

QuadratureRule gauss_legendre(int order, double a, double b, int max_order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  if (order > max_order) {
    throw DomainError("gauss_legendre: order " + std::to_string(order) + " exceeds maximum " +
                      std::to_string(max_order));
  }
  if (!(a < b)) throw DomainError("gauss_legendre: require a < b");

  QuadratureRule rule;
  rule.order = order;
  rule.lower = a;
  rule.upper = b;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int pairs = (order + 1) / 2;
  // Returns P_order(x) and its derivative via the three-term recurrence.
  const auto legendre = [order](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, order * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < pairs; ++i) {
    // Newton from the Tricomi estimate of the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const int hi = order - 1 - i;
    rule.nodes[hi] = mid + half * x;
    rule.nodes[i] = mid - half * x;
    rule.weights[hi] = half * w;
    rule.weights[i] = half * w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = mid;
  return rule;
}

QuadratureRule composite_gauss_legendre(int order, double a, double b, int panels) {
  if (panels < 1) throw DomainError("composite_gauss_legendre: panels must be >= 1");
  const QuadratureRule ref = gauss_legendre(order, -1.0, 1.0);
  QuadratureRule rule;
  rule.order = order;
  rule.lower = a;
  rule.upper = b;
  rule.nodes.reserve(static_cast<std::size_t>(order) * panels);
  rule.weights.reserve(static_cast<std::size_t>(order) * panels);
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + width * k;
    const double hi = (k + 1 == panels) ? b : a + width * (k + 1);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
  }
  return rule;
}

double entropy_term(double p) {
  constexpr double kSlack = 1e-15;
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    throw DomainError("entropy_term: probability " + std::to_string(p) + " outside [0, 1]");
  }
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p);
}

double gamma_q(double s, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(s, x);
}

double gamma_p(double s, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

std::vector<double> log_factorials(int n_max) {
  std::vector<double> table(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int k = 1; k <= n_max; ++k) table[k] = table[k - 1] + std::log(static_cast<double>(k));
  return table;
}

}  // namespace vnl
