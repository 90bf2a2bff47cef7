#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vnl/distribution.hpp"
#include "vnl/entropy.hpp"
#include "vnl/lattice.hpp"
#include "vnl/states.hpp"

namespace vnl {

inline constexpr double kDefaultCoherentTailTol = 1e-12;
inline constexpr double kDefaultQuadratureTailTol = 1e-10;
inline constexpr double kDefaultFdStep = 1e-4;

struct EntropyEvaluation {
  EntropyResult result;
  LatticeWindow window;
};

/// Lattice entropy of any state (closed form for coherent states, cell quadrature otherwise).
EntropyEvaluation evaluate_entropy(const LatticeConfig& cfg, const StateSpec& state, double tail_tol,
                                   int order = kDefaultQuadOrder,
                                   BackendChoice choice = BackendChoice::automatic);

/// Lattice entropy of the coherent state |z> from the erf-product probabilities.
/// Throws DomainError unless tail_tol lies in (0, 1e-6].
double entropy_of_coherent(const LatticeConfig& cfg, Complex z, double tail_tol = kDefaultCoherentTailTol);

struct GradientReport {
  double d_re = 0.0;
  double d_im = 0.0;
  double step = 0.0;
};

/// Central differences of entropy_of_coherent in Re z and Im z; h in [1e-6, 1e-2].
GradientReport gradient_wrt_z(const LatticeConfig& cfg, Complex z, double h = kDefaultFdStep,
                              double tail_tol = kDefaultCoherentTailTol);

struct SweepRecord {
  Complex parameter;
  double entropy = 0.0;
  double error_budget = 0.0;
  double tail_mass = 0.0;
  LatticeWindow window;
};

struct SweepTable {
  std::vector<SweepRecord> records;
};

/// Geometric grid lo * (hi/lo)^(k/(steps-1)); reciprocal-symmetric when lo*hi = 1.
std::vector<double> geometric_grid(double lo, double hi, int steps);
std::vector<double> linear_grid(double lo, double hi, int steps);

/// One record per aspect ratio; c_values must be positive and strictly monotone.
SweepTable sweep_c(std::span<const double> c_values, const StateSpec& state, double tail_tol,
                   int order = kDefaultQuadOrder);
SweepTable sweep_c(std::span<const double> c_values, Complex z, double tail_tol = kDefaultCoherentTailTol);

/// Entropy of |z> for z on a grid_re x grid_im grid spanning the closed unit
/// cell around the origin (Re z outer, Im z inner).
SweepTable scan_z(const LatticeConfig& cfg, int grid_re, int grid_im,
                  double tail_tol = kDefaultCoherentTailTol);

struct CMinimum {
  double c_star = 0.0;
  double s_star = 0.0;
  double error_budget = 0.0;
  int iterations = 0;
};

/// Golden-section minimum of c -> S(cfg(c), z) on [lo, hi] down to an
/// interval of width tol. The bracket is first checked for unimodality on a
/// 33-point sweep; an interior rise followed by a fall raises AnalysisError.
CMinimum minimize_over_c(double lo, double hi, double tol, Complex z,
                         double tail_tol = kDefaultCoherentTailTol);

struct LabeledState {
  std::string label;
  StateSpec state;
};

/// Fock 0-5, coherent states on a 3x3 grid spanning the unit cell, and even/odd
/// cat states with z in {1, 2}.
std::vector<LabeledState> default_conjecture_family(const LatticeConfig& cfg);

struct ProbeEntry {
  std::string label;
  double entropy = 0.0;
  double error_budget = 0.0;
  double tail_mass = 0.0;
  std::string backend;
};

struct ProbeReport {
  std::vector<ProbeEntry> entries;  // input order
  std::size_t witness = 0;          // index of the minimum
  double minimum = 0.0;
  double reference_bound = 0.0;
  std::vector<std::size_t> below_bound;
};

ProbeReport conjecture_probe(std::span<const LabeledState> states, const LatticeConfig& cfg,
                             double tail_tol = kDefaultCoherentTailTol, int order = kDefaultQuadOrder,
                             double reference_bound = kReportedLatticeMinimum);

struct VerificationCheck {
  std::string name;
  std::string paper_ref;  // the relation being checked
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;  // set when the check itself could not run
};

/// A reported value the computation does not reproduce. Informational only.
struct Discrepancy {
  std::string name;
  double reference = 0.0;
  double computed = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  std::vector<Discrepancy> discrepancies;

  bool all_passed() const;
};

std::vector<LatticeConfig> default_verification_grid();

/// Runs every identity check over the configurations; failures are report entries.
VerificationReport verify_suite(std::span<const LatticeConfig> cfg_grid);

}  // namespace vnl
