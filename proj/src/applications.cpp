#include "crlab/applications.hpp"

#include <algorithm>
#include <cmath>

namespace crlab {

namespace {

void require_scalar(const FiniteKernelSpace& space, const MultiplierTable& t, const char* who) {
  if (t.q() != 1 || t.p() != 1) throw InputError(std::string(who) + ": expected a scalar table");
  if (t.size() != space.size()) throw InputError(std::string(who) + ": table size does not match the space");
}

MultiplierTable stack(const MultiplierTable& top, const MultiplierTable& bottom) {
  std::vector<ComplexMatrix> v;
  for (std::size_t i = 0; i < top.size(); ++i) {
    ComplexMatrix m(2, 1);
    m << top[i](0, 0), bottom[i](0, 0);
    v.push_back(std::move(m));
  }
  return MultiplierTable(2, 1, std::move(v));
}

MultiplierTable combine(const MultiplierTable& b, const MultiplierTable& a, double sign) {
  std::vector<ComplexMatrix> v;
  for (std::size_t i = 0; i < b.size(); ++i) v.push_back(b[i] + (0.5 * sign) * (a[i] * a[i]));
  return MultiplierTable(1, 1, std::move(v));
}

}  // namespace

double carleson_constant(const FiniteKernelSpace& space) {
  if (space.size() == 0) throw InputError("carleson_constant: empty space");
  const ComplexMatrix& k = space.gram().matrix();
  const Eigen::VectorXd s = k.diagonal().real().cwiseSqrt().cwiseInverse();
  const HermitianMatrix normalized(s.asDiagonal() * k * s.asDiagonal());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(normalized.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

SeparationReport weak_separation_constant(const FiniteKernelSpace& space) {
  if (space.size() < 2) throw InputError("weak_separation_constant: need at least two points");
  const ComplexMatrix& k = space.gram().matrix();
  SeparationReport rep;
  for (Index i = 0; i < k.rows(); ++i)
    for (Index j = i + 1; j < k.rows(); ++j) {
      const double corr = std::norm(k(i, j)) / (k(i, i).real() * k(j, j).real());
      const double eps = std::sqrt(std::clamp(1.0 - corr, 0.0, 1.0));
      rep.pairs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), eps});
      rep.minimum = std::min(rep.minimum, eps);
    }
  return rep;
}

MultiplierTable interpolation_operator(const FiniteKernelSpace& space, const MultiplierTable& phi,
                                       const ComplexVector& w) {
  const Index n = static_cast<Index>(space.size());
  if (phi.size() != space.size() || phi.p() != 1 || phi.q() != n)
    throw InputError("interpolation_operator: expected a column of length n on the space");
  if (w.size() != n) throw InputError("interpolation_operator: w has the wrong length");
  for (Index i = 0; i < n; ++i) {
    const ComplexVector e = ComplexVector::Unit(n, i);
    if (max_abs(phi[static_cast<std::size_t>(i)] - e) > 1e-10)
      throw InputError("interpolation_operator: Phi(p_n) differs from e_n");
  }
  std::vector<ComplexMatrix> v;
  for (const auto& f : phi.values()) v.push_back(f.transpose() * w.asDiagonal() * f);
  return MultiplierTable(1, 1, std::move(v));
}

double jm_combination(const FiniteKernelSpace& space, const MultiplierTable& b, const MultiplierTable& a,
                      int sign) {
  require_scalar(space, b, "jm_combination");
  require_scalar(space, a, "jm_combination");
  if (sign != 1 && sign != -1) throw InputError("jm_combination: sign must be +1 or -1");
  const MultiplierTable column = stack(b, a);
  const double col = multiplier_norm(space, column);
  const double row = multiplier_norm(space, transpose(column));
  if (col > 1.0 + 1e-8 || row > 1.0 + 1e-8)
    throw DomainError("jm_combination: hypotheses fail (column norm " + std::to_string(col) +
                      ", row norm " + std::to_string(row) + ")");
  const double norm = multiplier_norm(space, combine(b, a, sign));
  if (norm > 1.0 + 1e-7) throw InternalError("jm_combination: bound violated");
  return norm;
}

std::optional<ExtremeWitness> extreme_witness(const FiniteKernelSpace& space, const MultiplierTable& b,
                                              int grid) {
  require_scalar(space, b, "extreme_witness");
  if (grid < 1) throw InputError("extreme_witness: grid must be positive");
  if (multiplier_norm(space, b) > 1.0 + 1e-8) throw DomainError("extreme_witness: b is not contractive");

  const std::size_t n = space.size();
  auto direction_table = [&](std::size_t dir, double c) {
    std::vector<ComplexMatrix> v(n, ComplexMatrix::Zero(1, 1));
    for (std::size_t i = 0; i < n; ++i)
      if (dir == n || dir == i) v[i](0, 0) = c;
    return MultiplierTable(1, 1, std::move(v));
  };
  auto feasible = [&](std::size_t dir, double c) {
    // A loose eigenvalue tolerance admits amplitudes of order sqrt(rtol) that are pure rounding.
    return is_contractive_at(space, space, stack(b, direction_table(dir, c)), 1.0, 1e-14);
  };

  double best = 0.0;
  std::size_t best_dir = 0;
  for (std::size_t dir = 0; dir <= n; ++dir) {
    // |a| <= 1 pointwise for any contractive column, so c = 1 bounds the bracket.
    double lo = 0.0, hi = 1.0;
    if (feasible(dir, hi)) lo = hi;
    else
      for (int s = 0; s < grid; ++s) {
        const double mid = 0.5 * (lo + hi);
        (feasible(dir, mid) ? lo : hi) = mid;
      }
    if (lo > best) {
      best = lo;
      best_dir = dir;
    }
  }
  if (best <= 1e-6) return std::nullopt;

  ExtremeWitness w;
  w.a = direction_table(best_dir, best);
  w.amplitude = best;
  w.direction = best_dir;
  w.column_norm = multiplier_norm(space, stack(b, w.a));
  w.b_plus = combine(b, w.a, 1.0);
  w.b_minus = combine(b, w.a, -1.0);
  w.norm_plus = jm_combination(space, b, w.a, 1);
  w.norm_minus = jm_combination(space, b, w.a, -1);
  return w;
}

}  // namespace crlab
