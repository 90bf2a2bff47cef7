#include "vnl/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "vnl/errors.hpp"
#include "vnl/numerics.hpp"

namespace vnl {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kEigenTolerance = 1e-10;
constexpr double kExpansionTailLimit = 1e-14;
// Beyond this |gamma| the recurrence prefactor exp(-|gamma|^2/2) is assembled in log space.
constexpr double kLogSpaceRadius = 10.0;

// Fills out[n] = <n|gamma> = exp(-|gamma|^2/2) gamma^n / sqrt(n!) for n = 0..N.
void number_amplitudes(Complex gamma, std::span<Complex> out) {
  const double r = std::abs(gamma);
  if (r <= kLogSpaceRadius) {
    Complex t = std::exp(-0.5 * r * r);
    out[0] = t;
    for (std::size_t n = 1; n < out.size(); ++n) {
      t *= gamma / std::sqrt(static_cast<double>(n));
      out[n] = t;
    }
    return;
  }
  const double log_r = std::log(r);
  const double theta = std::arg(gamma);
  double log_fact = 0.0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    const double log_mag = -0.5 * r * r + static_cast<double>(n) * log_r - 0.5 * log_fact;
    out[n] = std::polar(std::exp(log_mag), static_cast<double>(n) * theta);
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

FockState::FockState(std::vector<Complex> coeffs, double truncation_tail)
    : coeffs_(std::move(coeffs)), truncation_tail_(truncation_tail) {
  if (coeffs_.empty()) throw DomainError("FockState: empty coefficient vector");
  double norm2 = 0.0;
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("FockState: non-finite coefficient");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw DomainError("FockState: state not normalized (norm^2 = " + format_number(norm2) + ")");
  }
}

FockState FockState::number(int n) {
  if (n < 0) throw DomainError("FockState::number: n must be >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  c[n] = 1.0;
  return FockState(std::move(c));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DomainError("DensityMatrix: matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) throw DomainError("DensityMatrix: non-finite entry");
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) throw DomainError("DensityMatrix: not Hermitian");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  const double trace = entries_.trace().real();
  if (std::abs(trace - 1.0) > kNormTolerance) {
    throw DomainError("DensityMatrix: trace " + format_number(trace) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kEigenTolerance) {
    throw DomainError("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const FockState& state) {
  const auto c = state.coeffs();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c[i];
  return DensityMatrix(v * v.adjoint());
}

Complex coherent_amplitude(Complex gamma, const FockState& state) {
  const auto c = state.coeffs();
  const double r = std::abs(gamma);
  Complex sum{};
  if (r <= kLogSpaceRadius) {
    const Complex g = std::conj(gamma);
    Complex t = std::exp(-0.5 * r * r);
    sum = c[0] * t;
    for (std::size_t n = 1; n < c.size(); ++n) {
      t *= g / std::sqrt(static_cast<double>(n));
      sum += c[n] * t;
    }
    return sum;
  }
  std::vector<Complex> v(c.size());
  number_amplitudes(gamma, v);
  for (std::size_t n = 0; n < c.size(); ++n) sum += c[n] * std::conj(v[n]);
  return sum;
}

double husimi_q(Complex gamma, const StateSpec& state) {
  struct Visitor {
    Complex gamma;
    double operator()(const CoherentParam& s) const { return std::exp(-std::norm(gamma - s.z)); }
    double operator()(const FockState& s) const { return std::norm(coherent_amplitude(gamma, s)); }
    double operator()(const DensityMatrix& s) const {
      const auto& rho = s.entries();
      Eigen::VectorXcd v(rho.rows());
      number_amplitudes(gamma, std::span<Complex>(v.data(), static_cast<std::size_t>(v.size())));
      return std::max(0.0, v.dot(rho * v).real());
    }
  };
  return std::visit(Visitor{gamma}, state);
}

FockState fock_expand_coherent(Complex z, int truncation) {
  if (truncation < 0) throw DomainError("fock_expand_coherent: truncation must be >= 0");
  const double mean = std::norm(z);
  // Probability that a Poisson(|z|^2) count exceeds N.
  const double tail = gamma_p(truncation + 1.0, mean);
  if (tail > kExpansionTailLimit) {
    throw PrecisionError("fock_expand_coherent: truncation N=" + std::to_string(truncation) +
                         " drops Poisson tail " + format_number(tail) + " > 1e-14");
  }
  std::vector<Complex> c(static_cast<std::size_t>(truncation) + 1);
  number_amplitudes(z, c);
  double norm2 = 0.0;
  for (const Complex& v : c) norm2 += std::norm(v);
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& v : c) v *= scale;
  return FockState(std::move(c), tail);
}

FockState make_cat_state(Complex z, int sign, int truncation) {
  if (sign != 1 && sign != -1) throw DomainError("make_cat_state: sign must be +1 or -1");
  const FockState base = fock_expand_coherent(z, truncation);
  // |-z> has coefficients (-1)^n c_n, so only one parity survives.
  std::vector<Complex> c(base.coeffs().begin(), base.coeffs().end());
  double norm2 = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const bool odd = (n % 2) == 1;
    if (odd == (sign == 1)) {
      c[n] = 0.0;
    } else {
      norm2 += std::norm(c[n]);
    }
  }
  if (norm2 < 1e-24) throw DomainError("make_cat_state: superposition has zero norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& v : c) v *= scale;
  return FockState(std::move(c), base.truncation_tail() / norm2);
}

Complex husimi_centroid(const StateSpec& state) {
  struct Visitor {
    Complex operator()(const CoherentParam& s) const { return s.z; }
    Complex operator()(const FockState& s) const {
      const auto c = s.coeffs();
      Complex mean{};
      for (std::size_t n = 0; n + 1 < c.size(); ++n) {
        mean += std::conj(c[n]) * c[n + 1] * std::sqrt(static_cast<double>(n + 1));
      }
      return mean;
    }
    Complex operator()(const DensityMatrix& s) const {
      const auto& rho = s.entries();
      Complex mean{};
      for (Eigen::Index n = 1; n < rho.rows(); ++n) {
        mean += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
      }
      return mean;
    }
  };
  return std::visit(Visitor{}, state);
}

std::vector<double> fock_populations(const StateSpec& state) {
  struct Visitor {
    std::vector<double> operator()(const CoherentParam&) const { return {}; }
    std::vector<double> operator()(const FockState& s) const {
      std::vector<double> p;
      for (const Complex& c : s.coeffs()) p.push_back(std::norm(c));
      return p;
    }
    std::vector<double> operator()(const DensityMatrix& s) const {
      std::vector<double> p;
      for (Eigen::Index n = 0; n < s.entries().rows(); ++n) {
        p.push_back(std::max(0.0, s.entries()(n, n).real()));
      }
      return p;
    }
  };
  return std::visit(Visitor{}, state);
}

int fock_support(const StateSpec& state) {
  const auto pops = fock_populations(state);
  for (int n = static_cast<int>(pops.size()) - 1; n >= 0; --n) {
    if (pops[n] > 0.0) return n;
  }
  return -1;
}

double fock_envelope_tail(std::span<const double> populations, double radius) {
  if (!(radius > 0.0)) return 1.0;
  int support = static_cast<int>(populations.size()) - 1;
  while (support > 0 && populations[support] <= 0.0) --support;
  if (support < 0) return 0.0;

  const double x = radius * radius;
  std::vector<double> high(static_cast<std::size_t>(support) + 2, 0.0);
  for (int n = support; n >= 0; --n) high[n] = high[n + 1] + populations[n];

  double low = 0.0;
  double best = 1.0;
  for (int k = 0; k <= support; ++k) {
    low += gamma_q(k + 1.0, x);
    // Full block needs no splitting factor.
    const double bound = (k == support) ? low : 2.0 * (low + high[k + 1]);
    best = std::min(best, bound);
  }
  return best;
}

std::string describe(const StateSpec& state) {
  struct Visitor {
    std::string operator()(const CoherentParam& s) const {
      return "coherent:" + format_number(s.z.real()) + "," + format_number(s.z.imag());
    }
    std::string operator()(const FockState& s) const {
      const auto c = s.coeffs();
      const int n = s.truncation();
      if (c[n] == Complex{1.0, 0.0}) {
        bool number = true;
        for (int k = 0; k < n; ++k) number = number && c[k] == Complex{};
        if (number) return "fock:" + std::to_string(n);
      }
      return "fock-vector:N=" + std::to_string(n);
    }
    std::string operator()(const DensityMatrix& s) const {
      return "density-matrix:N=" + std::to_string(s.truncation());
    }
  };
  return std::visit(Visitor{}, state);
}

}  // namespace vnl
