#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vnl/errors.hpp"
#include "vnl/numerics.hpp"

using namespace vnl;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maclaurin series of erf, summed in long double; independent of libm erf.
double erf_series(double x) {
  long double term = x;
  long double sum = x;
  const long double x2 = static_cast<long double>(x) * x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    sum += term / (2 * n + 1);
  }
  return static_cast<double>(sum * 2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

}  // namespace

TEST_CASE("erf_interval limits and symmetry examples") {
  CHECK(erf_interval(0.0, kInf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(erf_interval(-kInf, kInf) == doctest::Approx(2.0).epsilon(1e-15));
  for (double a : {0.1, 0.9, 2.5, 7.0}) {
    CHECK(std::abs(erf_interval(-a, a) - 2.0 * erf_interval(0.0, a)) < 1e-14);
  }
  // 0.789908 from a Taylor series oracle at sqrt(pi)/2.
  const double w = std::sqrt(std::numbers::pi) / 2.0;
  CHECK(std::abs(erf_interval(0.0, w) - 0.789908) < 1e-6);
  CHECK(std::abs(erf_interval(0.0, w) - erf_series(w)) < 1e-14);
}

TEST_CASE("erf_interval reversed arguments negate") {
  CHECK(erf_interval(1.0, 0.2) == -erf_interval(0.2, 1.0));
  CHECK(erf_interval(0.3, 0.3) == 0.0);
}

TEST_CASE("erf_interval matches series on a grid") {
  for (double x1 = -2.0; x1 <= 2.0; x1 += 0.37) {
    for (double x2 = x1; x2 <= 2.5; x2 += 0.41) {
      CHECK(std::abs(erf_interval(x1, x2) - (erf_series(x2) - erf_series(x1))) < 1e-14);
    }
  }
}

TEST_CASE("erf_interval properties on random triples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int k = 0; k < 2000; ++k) {
    double x[3] = {u(rng), u(rng), u(rng)};
    std::sort(x, x + 3);
    CHECK(std::abs(erf_interval(x[0], x[1]) + erf_interval(x[1], x[2]) - erf_interval(x[0], x[2])) < 1e-13);
    CHECK(std::abs(erf_interval(-x[1], -x[0]) - erf_interval(x[0], x[1])) < 1e-14);
    const double v = erf_interval(x[0], x[2]);
    CHECK(v >= -2.0);
    CHECK(v <= 2.0);
  }
}

TEST_CASE("erf_interval keeps tail intervals accurate") {
  // Same-sign arguments beyond 6: compare with the erfc difference directly.
  for (double x1 : {6.1, 7.5, 9.0, 12.0}) {
    const double x2 = x1 + 0.8;
    CHECK(std::abs(erf_interval(x1, x2) - (std::erfc(x1) - std::erfc(x2))) < 1e-16);
    CHECK(std::abs(erf_interval(-x2, -x1) - (std::erfc(x1) - std::erfc(x2))) < 1e-16);
    CHECK(erf_interval(x1, x2) > 0.0);
  }
  // A cell 9 widths out still has a positive, relatively accurate value.
  const double v = erf_interval(8.0, 9.0);
  CHECK(v > 0.0);
  CHECK(std::abs(v / (std::erfc(8.0) - std::erfc(9.0)) - 1.0) < 1e-13);
}

TEST_CASE("gauss_legendre exactness examples") {
  const QuadratureRule r2 = gauss_legendre(2, -1.0, 1.0);
  CHECK(std::abs(r2.integrate([](double x) { return x * x; }) - 2.0 / 3.0) < 1e-14);
  const QuadratureRule r8 = gauss_legendre(8, 0.0, 1.0);
  CHECK(std::abs(r8.integrate([](double x) { return std::exp(x); }) - (std::numbers::e - 1.0)) < 1e-12);
}

TEST_CASE("gauss_legendre rule invariants") {
  for (int order : {1, 2, 3, 7, 16, 32, 64, 129, 256, 512}) {
    CAPTURE(order);
    const double a = -0.7;
    const double b = 2.3;
    const QuadratureRule rule = gauss_legendre(order, a, b);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    double wsum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(rule.nodes[i] > a);
      CHECK(rule.nodes[i] < b);
      if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      wsum += rule.weights[i];
    }
    CHECK(std::abs(wsum - (b - a)) < 1e-13);
    // Degree 2*order - 1 monomial on [-1, 1] (odd => 0) and degree 2*order - 2 (even).
    if (order <= 20) {
      const QuadratureRule ref = gauss_legendre(order, -1.0, 1.0);
      const int deg = 2 * order - 2;
      const double exact = 2.0 / (deg + 1);
      CHECK(std::abs(ref.integrate([deg](double x) { return std::pow(x, deg); }) - exact) < 1e-12);
      CHECK(std::abs(ref.integrate([deg](double x) { return std::pow(x, deg + 1); })) < 1e-12);
    }
  }
}

TEST_CASE("gauss_legendre rejects misuse") {
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(513, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(40, 0.0, 1.0, 32), DomainError);
  CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(4, 2.0, 1.0), DomainError);
}

TEST_CASE("composite rule integrates a Gaussian over a wide interval") {
  const QuadratureRule rule = composite_gauss_legendre(16, -8.0, 8.0, 16);
  const double v = rule.integrate([](double x) { return std::exp(-x * x); });
  CHECK(std::abs(v - std::sqrt(std::numbers::pi) * std::erf(8.0)) < 1e-14);
}

TEST_CASE("entropy_term values and domain") {
  CHECK(entropy_term(0.0) == 0.0);
  CHECK(entropy_term(1.0) == 0.0);
  CHECK(std::abs(entropy_term(1.0 / std::numbers::e) - 1.0 / std::numbers::e) < 1e-16);
  CHECK(entropy_term(-1e-16) == 0.0);
  CHECK(entropy_term(1.0 + 1e-16) == 0.0);
  CHECK_THROWS_AS(entropy_term(-1e-12), DomainError);
  CHECK_THROWS_AS(entropy_term(1.01), DomainError);
  CHECK_THROWS_AS(entropy_term(std::nan("")), DomainError);
}

TEST_CASE("entropy_term is concave and bounded") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5000; ++k) {
    const double p = u(rng);
    const double q = u(rng);
    CHECK(entropy_term(0.5 * (p + q)) >= 0.5 * (entropy_term(p) + entropy_term(q)) - 1e-12);
    CHECK(entropy_term(p) >= 0.0);
    CHECK(entropy_term(p) <= 1.0 / std::numbers::e + 1e-16);
  }
}

TEST_CASE("incomplete gamma helpers") {
  // Q(n+1, x) = exp(-x) sum_{k<=n} x^k / k!
  const double x = 3.7;
  double term = std::exp(-x);
  double sum = term;
  for (int n = 0; n <= 6; ++n) {
    if (n > 0) {
      term *= x / n;
      sum += term;
    }
    CHECK(std::abs(gamma_q(n + 1.0, x) - sum) < 1e-14);
    CHECK(std::abs(gamma_p(n + 1.0, x) + gamma_q(n + 1.0, x) - 1.0) < 1e-14);
  }
  CHECK(gamma_q(2.0, 0.0) == 1.0);
  CHECK(gamma_p(2.0, 0.0) == 0.0);
  // Q(1/2, x) = erfc(sqrt x)
  CHECK(std::abs(gamma_q(0.5, 2.0) - std::erfc(std::sqrt(2.0))) < 1e-15);
  const auto lf = log_factorials(20);
  CHECK(std::abs(lf[20] - std::lgamma(21.0)) < 1e-12);
}
