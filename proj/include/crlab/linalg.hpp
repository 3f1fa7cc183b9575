#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "crlab/errors.hpp"

namespace crlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Square complex matrix that is exactly Hermitian: the input is replaced by
/// (M + M*)/2 on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(Index n);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double tolerance_used = 0.0;
  bool verdict = true;
};

struct GramFactor {
  Index rank = 0;
  ComplexMatrix factor;  // dim x rank, H ~ factor * factor^*
};

bool all_finite(const ComplexMatrix& m);

/// Eigenvalue-based positivity test. The verdict is
/// min_eigenvalue >= -rtol * max(1, max_eigenvalue).
PsdReport is_psd(const HermitianMatrix& h, double rtol);

/// Largest singular value; 0 for empty matrices.
double operator_norm(const ComplexMatrix& m);

/// Minimal-rank factorization H ~ F F^*. Eigenvalues at or below
/// rank_tol * max(scale, lambda_max) are dropped. With the default scale of 0
/// the threshold is relative to lambda_max alone.
GramFactor gram_factor(const HermitianMatrix& h, double rank_tol, double scale = 0.0);

/// A - B D^{-1} B^* for the partition [[A, B], [B^*, D]] where D is the trailing
/// block_size x block_size block. Throws DomainError if D is not positive definite.
HermitianMatrix schur_complement(const HermitianMatrix& h, Index block_size);

/// Contraction V with V * sources.col(k) = targets.col(k), acting as zero on the
/// orthogonal complement of the column span of `sources`. The Gram matrices of the
/// two families must agree entrywise within tol.
ComplexMatrix extend_partial_isometry(const ComplexMatrix& sources, const ComplexMatrix& targets,
                                      double tol);

/// Principal square root of a PSD matrix; eigenvalues in [-1e-14, 0) are clamped to 0.
ComplexMatrix hermitian_sqrt(const HermitianMatrix& h);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

}  // namespace crlab
