#pragma once

#include <utility>

#include "crlab/kernels.hpp"
#include "crlab/multipliers.hpp"

namespace crlab {

/// theta_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>), the involution of the
/// ball exchanging 0 and a. For a = 0 this is z -> -z.
ComplexVector involution_eval(const ComplexVector& a, const ComplexVector& z);

/// Column form (I - a a^*)^{1/2} (I - z a^*)^{-1} (a - z) (1 - a^* a)^{-1/2} of the
/// same involution; z may lie on the closed ball.
ComplexVector column_mobius_eval(const ComplexVector& a, const ComplexVector& z);

/// theta = theta_a o U^*, so theta(0) = a and theta^{-1}(0) = U a.
class BallAutomorphism {
 public:
  BallAutomorphism(ComplexVector a, ComplexMatrix unitary);
  static BallAutomorphism involution(const ComplexVector& a);
  static BallAutomorphism identity(Index d);

  Index dim() const { return a_.size(); }
  const ComplexVector& a() const { return a_; }
  const ComplexMatrix& unitary() const { return unitary_; }

  /// theta(z)
  ComplexVector operator()(const ComplexVector& z) const;
  /// theta^{-1}(w) = U theta_a(w)
  ComplexVector inverse(const ComplexVector& w) const;
  ComplexVector zero_preimage() const { return unitary_ * a_; }

 private:
  ComplexVector a_;
  ComplexMatrix unitary_;
  bool is_identity_ = false;
};

/// |(1 - <theta z, theta w>) - (1-<a,a>)(1-<z,w>)/((1-<z,a>)(1-<a,w>))| with a = theta^{-1}(0).
double kernel_identity_residual(const BallAutomorphism& theta, const ComplexVector& z,
                                const ComplexVector& w);

/// Max-entry residual of
/// I - theta_a(Z) theta_a(W)^* = (I-aa^*)^{1/2}(I-Za^*)^{-1}(I-ZW^*)(I-aW^*)^{-1}(I-aa^*)^{1/2}.
double column_defect_residual(const ComplexVector& a, const ComplexVector& z, const ComplexVector& w);

/// Space over theta^{-1}(F) together with Phi o theta. Requires a Drury-Arveson model.
std::pair<FiniteKernelSpace, MultiplierTable> pull_back_domain(const FiniteKernelSpace& space,
                                                               const MultiplierTable& phi,
                                                               const BallAutomorphism& theta);

/// Pointwise theta o Phi for column (p == 1) or row (q == 1) tables.
MultiplierTable apply_range_automorphism(const MultiplierTable& phi, const BallAutomorphism& theta);

}  // namespace crlab
