#pragma once

#include <string>

#include "vnl/distribution.hpp"
#include "vnl/states.hpp"

namespace vnl {

/// Minimum lattice entropy as quoted in the literature for the square lattice
/// ground state; kept for comparison only (the closed form gives 1.32216...).
inline constexpr double kReportedLatticeMinimum = 1.386;

inline constexpr double kDefaultWehrlRadius = 8.0;

struct EntropyResult {
  double value = 0.0;         // nats
  double tail_mass = 0.0;     // probability mass not covered by the evaluation
  double error_budget = 0.0;  // bound on |true - value|
  std::string backend;
};

/// Shannon entropy of the cell probabilities.
///
/// The budget adds the per-cell error model propagated through -p ln p and a
/// tail term eps*ln(1/p_edge) + h(eps), where eps is the certified tail mass
/// and p_edge the largest boundary-ring probability. The tail term assumes
/// every cell outside the window is no more probable than p_edge, which holds
/// for the monotonically decaying distributions produced by window growth.
///
/// Throws PrecisionError when the tail mass exceeds 1e-3.
EntropyResult lattice_entropy(const LatticeDistribution& dist);

/// -integral (Q/pi) ln(Q/pi) d^2 alpha over the square of half-side `radius`
/// centred on the Husimi centroid, with composite Gauss-Legendre panels of
/// width <= 1 at `order` and 2*order nodes each.
///
/// For number-basis states the tail bound uses the Gaussian envelope of the
/// state's Fock support; a PrecisionError is raised when it exceeds 1e-10.
EntropyResult wehrl_entropy(const StateSpec& state, double radius = kDefaultWehrlRadius,
                            int order = kDefaultQuadOrder);

/// 1 + ln pi, the Wehrl entropy of every coherent state.
double wehrl_reference();

}  // namespace vnl
