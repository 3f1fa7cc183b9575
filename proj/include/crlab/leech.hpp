#pragma once

#include <optional>

#include "crlab/kernels.hpp"
#include "crlab/moebius.hpp"
#include "crlab/multipliers.hpp"

namespace crlab {

/// Contraction [[alpha, beta], [gamma, delta]] : C^p (+) C^{d r} -> C^e (+) C^r.
struct Colligation {
  ComplexMatrix alpha;  // e x p
  ComplexMatrix beta;   // e x d r
  ComplexMatrix gamma;  // r x p
  ComplexMatrix delta;  // r x d r
  Index p = 0, e = 0, r = 0, d = 0;

  ComplexMatrix stacked() const;
};

/// Psi(w)^* = alpha + beta (conj(w) (x) I_r) (I - delta (conj(w) (x) I_r))^{-1} gamma.
class TransferMultiplier {
 public:
  explicit TransferMultiplier(Colligation c);

  const Colligation& colligation() const { return c_; }
  /// Psi(w), a p x e matrix.
  ComplexMatrix operator()(const ComplexVector& w) const;
  MultiplierTable on(const FiniteKernelSpace& space) const;

 private:
  Colligation c_;
};

struct LeechOptions {
  double hypothesis_rtol = 1e-9;
  double rank_tol = 1e-14;
  double gram_tol = 1e-8;  // scaled by the largest Gram entry
  double contractive_slack = 1e-7;
};

struct LeechResult {
  TransferMultiplier transfer;
  MultiplierTable table;        // Psi on the points of the space
  PsdReport hypothesis;
  double factor_residual = 0.0;  // max_i max|Phi_i - Theta_i Psi_i|
  bool contractive = false;      // Pick assembly of Psi PSD at 1 + contractive_slack
};

/// Constructive Leech factorization Phi = Theta Psi on a Drury-Arveson space, given
/// K(z_i, z_j)(Theta_i Theta_j^* - Phi_i Phi_j^*) >= 0. Psi is the transfer function
/// of the lurking-isometry colligation.
LeechResult leech_factor(const FiniteKernelSpace& space, const MultiplierTable& theta,
                         const MultiplierTable& phi, const LeechOptions& opts = {});

struct OriginFactor {
  MultiplierTable psi;  // d N x 1, ordered psi_11..psi_d1, psi_12, ..., psi_dN
  double phi_norm = 0.0;
  double psi_norm = 0.0;
  double factor_residual = 0.0;
};

/// Phi = diag(z, ..., z) Psi with ||Psi|| = ||Phi|| for a column vanishing at 0 in F.
OriginFactor factor_at_origin(const FiniteKernelSpace& space, const MultiplierTable& phi);

struct SchurReduction {
  HermitianMatrix matrix;  // blocks K_ij (I - Phi_i Phi_j^*) - I over E = F \ {0}
  std::vector<std::size_t> e_indices;
  bool reduced_verdict = true;
  bool direct_verdict = true;
};

SchurReduction schur_reduce(const FiniteKernelSpace& space, const MultiplierTable& phi,
                            double rtol = 1e-9);

struct RowLift {
  MultiplierTable row;  // z Psi
  double norm = 0.0;
};

/// z Psi for Psi whose restriction to E = F \ {0} is contractive.
RowLift z_row_lift(const FiniteKernelSpace& space, const MultiplierTable& psi);

struct SchurStepResult {
  FiniteKernelSpace moved_space;     // F moved so that its first point is 0
  MultiplierTable moved_column;      // automorphism-adjusted column vanishing at 0
  MultiplierTable factor;            // column of length d N from factor_at_origin
  MultiplierTable matrix_table;      // d x N reshape of factor
  MultiplierTable row_table;         // z * matrix_table
  std::optional<FiniteKernelSpace> reduced_space;  // E; empty when |F| = 1
  double column_norm = 0.0;          // of the input column
  double row_norm = 0.0;             // of row_table on moved_space
  double identity_residual = 0.0;    // max |moved_column^T - row_table|
  double zeroing_residual = 0.0;     // magnitudes cleared to enforce exact zeros at 0
};

/// One step of the Schur algorithm for a contractive column.
SchurStepResult schur_step(const FiniteKernelSpace& space, const MultiplierTable& phi);

struct PairFactor {
  MultiplierTable psi;    // (g q) x p multiplier of the source space
  MultiplierTable g_row;  // G (x) I_q
  double residual = 0.0;
  double psi_norm = 0.0;
};

/// Phi = (G (x) I) Psi for a contractive multiplier from the source to the target of a pair.
PairFactor pair_factor(const FiniteKernelSpace& pair_space, const MultiplierTable& phi);

}  // namespace crlab
