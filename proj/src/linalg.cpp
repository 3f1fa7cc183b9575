#include "crlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crlab {

DomainError::DomainError(const std::string& what, const PsdReport& report)
    : std::domain_error([&] {
        std::ostringstream os;
        os << what << " (min eigenvalue " << report.min_eigenvalue << ", max eigenvalue "
           << report.max_eigenvalue << ", tolerance " << report.tolerance_used << ")";
        return os.str();
      }()),
      min_eigenvalue_(report.min_eigenvalue) {}

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("HermitianMatrix: matrix is not square");
  if (!all_finite(m)) throw InputError("HermitianMatrix: non-finite entry");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

PsdReport is_psd(const HermitianMatrix& h, double rtol) {
  if (!(rtol > 0.0)) throw InputError("is_psd: tolerance must be positive");
  PsdReport r;
  r.tolerance_used = rtol;
  if (h.dim() == 0) return r;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("is_psd: eigensolver failed");
  const auto& ev = es.eigenvalues();
  r.min_eigenvalue = ev(0);
  r.max_eigenvalue = ev(ev.size() - 1);
  r.verdict = r.min_eigenvalue >= -rtol * std::max(1.0, r.max_eigenvalue);
  return r;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (!all_finite(m)) throw InputError("operator_norm: non-finite entry");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

GramFactor gram_factor(const HermitianMatrix& h, double rank_tol, double scale) {
  const PsdReport report = is_psd(h, rank_tol);
  if (!report.verdict) throw DomainError("gram_factor: matrix is not positive semidefinite", report);
  GramFactor g;
  const Index n = h.dim();
  if (n == 0) {
    g.factor = ComplexMatrix(0, 0);
    return g;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw NumericError("gram_factor: eigensolver failed");
  const auto& ev = es.eigenvalues();
  const double threshold = rank_tol * std::max(scale, ev(n - 1));
  Index first = n;
  while (first > 0 && ev(first - 1) > threshold) --first;
  g.rank = n - first;
  g.factor.resize(n, g.rank);
  // Largest eigenvalues first.
  for (Index k = 0; k < g.rank; ++k) {
    const Index src = n - 1 - k;
    g.factor.col(k) = es.eigenvectors().col(src) * std::sqrt(ev(src));
  }
  return g;
}

HermitianMatrix schur_complement(const HermitianMatrix& h, Index block_size) {
  const Index n = h.dim();
  if (block_size < 0 || block_size > n) throw InputError("schur_complement: bad block size");
  if (block_size == 0) return h;
  const Index m = n - block_size;
  const ComplexMatrix& full = h.matrix();
  const ComplexMatrix d = full.bottomRightCorner(block_size, block_size);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(d, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > 1e-12 * std::max(1.0, ev(block_size - 1)))) {
    PsdReport r{ev(0), ev(block_size - 1), 1e-12, false};
    throw DomainError("schur_complement: trailing block is not positive definite", r);
  }
  if (m == 0) return HermitianMatrix(ComplexMatrix(0, 0));
  const ComplexMatrix b = full.topRightCorner(m, block_size);
  Eigen::LLT<ComplexMatrix> llt(d);
  const ComplexMatrix dinv_bstar = llt.solve(b.adjoint());
  return HermitianMatrix(full.topLeftCorner(m, m) - b * dinv_bstar);
}

ComplexMatrix extend_partial_isometry(const ComplexMatrix& sources, const ComplexMatrix& targets,
                                      double tol) {
  if (sources.cols() != targets.cols())
    throw InputError("extend_partial_isometry: source and target counts differ");
  if (!all_finite(sources) || !all_finite(targets))
    throw InputError("extend_partial_isometry: non-finite entry");
  const Index k = sources.cols();
  ComplexMatrix v = ComplexMatrix::Zero(targets.rows(), sources.rows());
  if (k == 0) return v;

  const ComplexMatrix gs = sources.adjoint() * sources;
  const ComplexMatrix gt = targets.adjoint() * targets;
  const double deviation = max_abs(gs - gt);
  if (deviation > tol) {
    std::ostringstream os;
    os << "extend_partial_isometry: Gram mismatch " << deviation << " exceeds " << tol;
    throw DomainError(os.str());
  }

  // sources = U S W^*; on the retained singular directions the map is
  // targets W S^{-1} U^*. Its isometric (polar) part is used so that the result
  // is a contraction even when the Gram matrices agree only approximately.
  Eigen::JacobiSVD<ComplexMatrix> svd(sources, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return v;
  const double cutoff = 1e-12 * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  if (r == 0) return v;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix w = svd.matrixV().leftCols(r);
  const ComplexMatrix m = targets * w * s.head(r).cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<ComplexMatrix> polar(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexMatrix q = polar.matrixU() * polar.matrixV().adjoint();
  v = q * u.adjoint();
  return v;
}

ComplexMatrix hermitian_sqrt(const HermitianMatrix& h) {
  if (h.dim() == 0) return ComplexMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  Eigen::VectorXd ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-14) throw DomainError("hermitian_sqrt: matrix has a negative eigenvalue");
    ev(i) = ev(i) < 0.0 ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace crlab
