#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vnl/distribution.hpp"
#include "vnl/errors.hpp"
#include "vnl/numerics.hpp"

using namespace vnl;

namespace {

const double kW = std::sqrt(std::numbers::pi) / 2;

double sum_probs(const LatticeDistribution& d) {
  double s = 0.0;
  for (double p : d.probs()) s += p;
  return s;
}

}  // namespace

TEST_CASE("closed form at the origin cell") {
  const LatticeConfig cfg = LatticeConfig::square();
  const double p00 = closed_form_prob(cfg, {{0.0, 0.0}}, {0, 0});
  CHECK(std::abs(p00 - 0.623954) < 1e-5);
  // 30-digit oracle.
  CHECK(std::abs(p00 - 0.62395558775353429) < 1e-15);
  CHECK(std::abs(p00 - std::pow(erf_interval(0.0, kW), 2)) < 1e-15);
  CHECK(closed_form_prob(cfg, {{0.0, 0.0}}, {5, 0}) < 1e-15);
  for (int m = -4; m <= 4; ++m) {
    for (int n = -4; n <= 4; ++n) {
      CHECK(closed_form_prob(cfg, {{0.0, 0.0}}, {m, n}) == closed_form_prob(cfg, {{0.0, 0.0}}, {-m, -n}));
    }
  }
}

TEST_CASE("closed form cell parameters") {
  const LatticeConfig cfg = LatticeConfig::from_aspect(1.3);
  const Complex z(0.4, -0.25);
  const ClosedFormCell a = ClosedFormCell::at(cfg, z, {2, -1});
  const ClosedFormCell b = ClosedFormCell::at(cfg, -z, {-2, 1});
  CHECK(a.rho_m == doctest::Approx(-b.rho_m).epsilon(1e-14));
  CHECK(a.sigma_n == doctest::Approx(-b.sigma_n).epsilon(1e-14));
  CHECK(std::abs(a.rho_m - (lattice_point(cfg, {2, -1}).real() - z.real())) < 1e-14);
  CHECK(a.half_width_x == cfg.half_width_x());
}

TEST_CASE("reflection and translation of the closed form") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> k(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const LatticeConfig cfg = LatticeConfig::from_aspect(std::exp(0.5 * u(rng)));
    const Complex z(u(rng), u(rng));
    const LatticeIndex idx{k(rng), k(rng)};
    const LatticeIndex shift{k(rng), k(rng)};
    CHECK(std::abs(closed_form_prob(cfg, {z}, idx) - closed_form_prob(cfg, {-z}, {-idx.m, -idx.n})) < 1e-14);
    const Complex zs = z + lattice_point(cfg, shift);
    CHECK(std::abs(closed_form_prob(cfg, {zs}, idx) -
                   closed_form_prob(cfg, {z}, {idx.m - shift.m, idx.n - shift.n})) < 1e-13);
  }
}

TEST_CASE("closed form factorizes and the marginals sum to one") {
  const LatticeConfig cfg = LatticeConfig::from_aspect(0.7);
  const Complex z(0.3, 0.9);
  double fx = 0.0;
  double fp = 0.0;
  for (int j = -15; j <= 15; ++j) {
    fx += ClosedFormCell::at(cfg, z, {j, 0}).x_factor();
    fp += ClosedFormCell::at(cfg, z, {0, j}).p_factor();
    for (int n = -3; n <= 3; ++n) {
      const double f = ClosedFormCell::at(cfg, z, {j, 0}).x_factor();
      const double g = ClosedFormCell::at(cfg, z, {0, n}).p_factor();
      CHECK(std::abs(closed_form_prob(cfg, {z}, {j, n}) - f * g) < 1e-16);
    }
  }
  CHECK(std::abs(fx - 1.0) < 1e-14);
  CHECK(std::abs(fp - 1.0) < 1e-14);
}

TEST_CASE("c and 1/c exchange the factor multisets at z = 0") {
  for (double c : {0.5, 1.7, 3.0}) {
    const LatticeConfig a = LatticeConfig::from_aspect(c);
    const LatticeConfig b = LatticeConfig::from_aspect(1.0 / c);
    std::vector<double> f;
    std::vector<double> g;
    for (int j = -10; j <= 10; ++j) {
      f.push_back(ClosedFormCell::at(a, {0.0, 0.0}, {j, 0}).x_factor());
      g.push_back(ClosedFormCell::at(b, {0.0, 0.0}, {0, j}).p_factor());
    }
    std::sort(f.begin(), f.end());
    std::sort(g.begin(), g.end());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f[i] - g[i]) < 1e-14);
  }
}

TEST_CASE("quadrature reproduces the closed form") {
  for (double c : {0.5, 1.0, 2.0}) {
    const LatticeConfig cfg = LatticeConfig::from_aspect(c);
    for (Complex z : {Complex(0.0, 0.0), Complex(-1.5, 0.75), Complex(1.5, 1.5)}) {
      for (int m = -2; m <= 2; ++m) {
        for (int n = -2; n <= 2; ++n) {
          const double exact = closed_form_prob(cfg, {z}, {m, n});
          const double quad = averaged_prob_quadrature(cfg, CoherentParam{z}, {m, n}, 32);
          CHECK(std::abs(exact - quad) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("quadrature on the vacuum in all representations") {
  const LatticeConfig cfg = LatticeConfig::from_aspect(1.2);
  const FockState vac = FockState::number(0);
  const DensityMatrix rho = DensityMatrix::from_pure(vac);
  for (LatticeIndex idx : {LatticeIndex{0, 0}, LatticeIndex{1, -1}, LatticeIndex{-2, 0}}) {
    const double exact = closed_form_prob(cfg, {{0.0, 0.0}}, idx);
    const double pure = averaged_prob_quadrature(cfg, vac, idx);
    CHECK(std::abs(pure - exact) < 1e-12);
    CHECK(std::abs(averaged_prob_quadrature(cfg, rho, idx) - pure) < 1e-12);
  }
}

TEST_CASE("quadrature order validation") {
  const LatticeConfig cfg = LatticeConfig::square();
  CHECK_THROWS_AS(averaged_prob_quadrature(cfg, CoherentParam{}, {0, 0}, 1), DomainError);
  // Order 2 cannot resolve the Gaussian to 1e-11.
  CHECK_THROWS_AS(averaged_prob_quadrature(cfg, FockState::number(4), {0, 0}, 2), PrecisionError);
  try {
    averaged_prob_quadrature(cfg, FockState::number(4), {0, 0}, 2);
  } catch (const PrecisionError& e) {
    CHECK(e.first().has_value());
    CHECK(e.second().has_value());
  }
}

TEST_CASE("coherent distribution at the origin") {
  const LatticeConfig cfg = LatticeConfig::square();
  const LatticeDistribution d = build_distribution(cfg, CoherentParam{}, 1e-12);
  CHECK(d.backend() == Backend::closed_form);
  CHECK(d.window().m_min >= -5);
  CHECK(d.window().m_max <= 5);
  CHECK(d.window().m_min <= -3);
  CHECK(d.window().n_max >= 3);
  const double s = sum_probs(d);
  CHECK(s >= 1 - 1e-12);
  CHECK(s <= 1 + 1e-15);
  CHECK(d.tail_mass_bound() <= 1e-12);
  CHECK(d.at({100, 0}) == 0.0);
  CHECK(d.at({0, 0}) == closed_form_prob(cfg, {{0.0, 0.0}}, {0, 0}));
  for (double p : d.probs()) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("distribution normalization across states") {
  for (double c : {0.8, 1.0, 1.25}) {
    const LatticeConfig cfg = LatticeConfig::from_aspect(c);
    for (int n = 0; n <= 3; ++n) {
      const LatticeDistribution d = build_distribution(cfg, FockState::number(n), 1e-10);
      CHECK(d.backend() == Backend::quadrature);
      CHECK(d.quad_order() == kDefaultQuadOrder);
      CHECK(sum_probs(d) <= 1 + 1e-10);
      CHECK(sum_probs(d) + d.tail_mass_bound() >= 1 - 1e-10);
    }
  }
  const LatticeDistribution f1 = build_distribution(LatticeConfig::square(), FockState::number(1), 1e-10);
  CHECK(std::abs(sum_probs(f1) - 1.0) <= 1e-10);
}

TEST_CASE("window follows the state") {
  const LatticeConfig cfg = LatticeConfig::square();
  const Complex shift = lattice_point(cfg, {5, -3});
  const LatticeDistribution a = build_distribution(cfg, CoherentParam{}, 1e-12);
  const LatticeDistribution b = build_distribution(cfg, CoherentParam{shift}, 1e-12);
  CHECK(b.window().m_min == a.window().m_min + 5);
  CHECK(b.window().n_max == a.window().n_max - 3);
  const Complex near = lattice_point(cfg, {1, -1});
  const LatticeDistribution q = build_distribution(cfg, fock_expand_coherent(near), 1e-10);
  CHECK(q.window().contains({1, -1}));
  CHECK(std::abs(q.at({1, -1}) - a.at({0, 0})) < 1e-10);
}

TEST_CASE("forced backends agree") {
  const LatticeConfig cfg = LatticeConfig::from_aspect(1.4);
  const CoherentParam z{{0.7, 0.3}};
  const LatticeDistribution cf = build_distribution(cfg, z, 1e-10, 32, BackendChoice::closed_form);
  const LatticeDistribution qd = build_distribution(cfg, z, 1e-10, 32, BackendChoice::quadrature);
  CHECK(qd.backend() == Backend::quadrature);
  for (std::size_t i = 0; i < qd.probs().size(); ++i) {
    const LatticeIndex idx = qd.window().index_at(i);
    CHECK(std::abs(qd.probs()[i] - cf.at(idx)) < 1e-10);
  }
  CHECK_THROWS_AS(build_distribution(cfg, FockState::number(1), 1e-10, 32, BackendChoice::closed_form), DomainError);
}

TEST_CASE("build_distribution argument errors") {
  const LatticeConfig cfg = LatticeConfig::square();
  CHECK_THROWS_AS(build_distribution(cfg, CoherentParam{}, 0.0), DomainError);
  CHECK_THROWS_AS(build_distribution(cfg, CoherentParam{}, 1e-2), DomainError);
  CHECK_THROWS_AS(build_distribution(cfg, CoherentParam{}, 1e-12, 32, BackendChoice::automatic, 2),
                  DivergenceError);
  CHECK_THROWS_AS(build_distribution(LatticeConfig::from_aspect(20.0), CoherentParam{}, 1e-12, 32,
                                     BackendChoice::automatic, 4),
                  DivergenceError);
}

TEST_CASE("LatticeDistribution rejects inconsistent data") {
  const LatticeConfig cfg = LatticeConfig::square();
  const LatticeWindow w{0, 0, 0, 1};
  CHECK_THROWS(LatticeDistribution(cfg, w, {0.5, 0.4}, 0.0, Backend::closed_form));
  CHECK_THROWS(LatticeDistribution(cfg, w, {0.7, 0.4}, 0.0, Backend::closed_form));
  CHECK_THROWS(LatticeDistribution(cfg, w, {1.2, -0.2}, 0.0, Backend::closed_form));
  CHECK_THROWS(LatticeDistribution(cfg, w, {1.0}, 0.0, Backend::closed_form));
  CHECK_NOTHROW(LatticeDistribution(cfg, w, {0.5, 0.4}, 0.1, Backend::closed_form));
}

TEST_CASE("unaveraged Husimi values do not sum to one") {
  const LatticeConfig cfg = LatticeConfig::square();
  CHECK(unaveraged_q(cfg, CoherentParam{}, {0, 0}) == 1.0);
  CHECK(std::abs(unaveraged_q(cfg, CoherentParam{}, {1, 1}) - std::exp(-2 * std::numbers::pi)) < 1e-16);
  double s = 0.0;
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n) s += unaveraged_q(cfg, CoherentParam{}, {m, n});
  CHECK(std::abs(s - 1.180340599016) < 1e-11);
}

TEST_CASE("orthonormality integrals") {
  const LatticeConfig sq = LatticeConfig::square();
  CHECK(std::abs(orthonormality_integral(sq, {0, 0}, {0, 0}) - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(orthonormality_integral(sq, {2, -1}, {2, -1}) - Complex(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(orthonormality_integral(sq, {0, 0}, {1, 0})) < 1e-10);
  const LatticeConfig c14 = LatticeConfig::from_aspect(1.4);
  CHECK(std::abs(orthonormality_integral(c14, {0, 0}, {2, 3})) < 1e-10);
  const Eigen::MatrixXcd gram = orthonormality_gram(LatticeConfig::from_aspect(1.5), 1);
  REQUIRE(gram.rows() == 9);
  CHECK((gram - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-10);
}
