#pragma once

#include <optional>
#include <vector>

#include "crlab/kernels.hpp"
#include "crlab/multipliers.hpp"

namespace crlab {

/// Top eigenvalue of the normalized Gram matrix K_ij / sqrt(K_ii K_jj).
double carleson_constant(const FiniteKernelSpace& space);

struct PairSeparation {
  std::size_t i = 0;
  std::size_t j = 0;
  double epsilon = 0.0;
};

struct SeparationReport {
  std::vector<PairSeparation> pairs;
  double minimum = 1.0;
};

/// epsilon_ij = sqrt(1 - |K_ij|^2 / (K_ii K_jj)) for every pair of points.
SeparationReport weak_separation_constant(const FiniteKernelSpace& space);

/// T(w) = Phi^T diag(w) Phi pointwise, for a column with Phi(p_n) = e_n.
MultiplierTable interpolation_operator(const FiniteKernelSpace& space, const MultiplierTable& phi,
                                       const ComplexVector& w);

/// Multiplier norm of b + sign * a^2 / 2, given that the column [b; a] and the
/// row [b, a] are contractive.
double jm_combination(const FiniteKernelSpace& space, const MultiplierTable& b,
                      const MultiplierTable& a, int sign);

struct ExtremeWitness {
  MultiplierTable a;
  MultiplierTable b_plus;
  MultiplierTable b_minus;
  double amplitude = 0.0;
  /// Index of the point carrying a, or the number of points for the constant direction.
  std::size_t direction = 0;
  double column_norm = 0.0;  // of [b; a]
  double norm_plus = 0.0;
  double norm_minus = 0.0;
};

/// Searches a = c * v over point indicators v and the constant function, with c
/// maximal such that [b; a] is contractive (bisection with `grid` steps).
/// Returns nothing when no direction admits c > 1e-6.
std::optional<ExtremeWitness> extreme_witness(const FiniteKernelSpace& space, const MultiplierTable& b,
                                              int grid = 60);

}  // namespace crlab
