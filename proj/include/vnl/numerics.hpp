#pragma once

#include <vector>

namespace vnl {

inline constexpr int kMaxQuadratureOrder = 512;

/// Gauss-Legendre nodes/weights scaled to [lower, upper]. Nodes are ascending.
struct QuadratureRule {
  int order = 0;
  double lower = -1.0;
  double upper = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// (2/sqrt(pi)) * integral of exp(-x^2) over [x1, x2]; infinite limits allowed.
/// Same-sign arguments away from zero are evaluated as an erfc difference so
/// that tail intervals keep full relative precision.
double erf_interval(double x1, double x2);

/// Order-`order` Gauss-Legendre rule on [a, b]. Throws DomainError for
/// order < 1, order > max_order, or a >= b.
QuadratureRule gauss_legendre(int order, double a, double b, int max_order = kMaxQuadratureOrder);

/// `panels` equal sub-intervals of [a, b], each carrying an order-`order` rule.
QuadratureRule composite_gauss_legendre(int order, double a, double b, int panels);

/// -p ln p with 0 ln 0 = 0. Accepts p within 1e-15 of [0, 1] (clamped).
double entropy_term(double p);

/// Regularized upper incomplete gamma Q(s, x).
double gamma_q(double s, double x);
/// Regularized lower incomplete gamma P(s, x).
double gamma_p(double s, double x);

/// ln(k!) for k = 0..n_max.
std::vector<double> log_factorials(int n_max);

}  // namespace vnl
