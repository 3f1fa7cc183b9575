#include "crlab/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "crlab/random.hpp"

namespace crlab {

MultiplierTable::MultiplierTable(Index q, Index p, std::vector<ComplexMatrix> values,
                                 std::string space_id)
    : q_(q), p_(p), values_(std::move(values)), space_id_(std::move(space_id)) {
  if (q_ < 0 || p_ < 0) throw InputError("MultiplierTable: negative shape");
  for (const auto& v : values_) {
    if (v.rows() != q_ || v.cols() != p_) throw InputError("MultiplierTable: non-uniform value shapes");
    if (!all_finite(v)) throw InputError("MultiplierTable: non-finite value");
  }
}

MultiplierTable MultiplierTable::constant(std::size_t n, const ComplexMatrix& value) {
  return MultiplierTable(value.rows(), value.cols(), std::vector<ComplexMatrix>(n, value));
}

MultiplierTable MultiplierTable::zeros(std::size_t n, Index q, Index p) {
  return constant(n, ComplexMatrix::Zero(q, p));
}

MultiplierTable MultiplierTable::scaled(double s) const {
  std::vector<ComplexMatrix> v;
  v.reserve(values_.size());
  for (const auto& m : values_) v.push_back(m * s);
  return MultiplierTable(q_, p_, std::move(v), space_id_);
}

MultiplierTable MultiplierTable::restricted(const std::vector<std::size_t>& subset) const {
  std::vector<ComplexMatrix> v;
  for (std::size_t i : subset) v.push_back(values_.at(i));
  return MultiplierTable(q_, p_, std::move(v), space_id_);
}

double MultiplierTable::sup_norm() const {
  double s = 0.0;
  for (const auto& m : values_) s = std::max(s, operator_norm(m));
  return s;
}

namespace {

void check_pick_inputs(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                       const MultiplierTable& phi, double t) {
  if (!src.same_points(dst)) throw InputError("pick_matrix: source and target spaces differ in points");
  if (phi.size() != src.size()) throw InputError("pick_matrix: table size does not match the space");
  if (!(t >= 0.0)) throw InputError("pick_matrix: level must be non-negative");
}

inline void assemble_block_row(const ComplexMatrix& ks, const ComplexMatrix& kd,
                               const MultiplierTable& phi, double t2, Index i, ComplexMatrix& out) {
  const Index q = phi.q();
  const Index n = static_cast<Index>(phi.size());
  const auto iu = static_cast<std::size_t>(i);
  for (Index j = 0; j < n; ++j) {
    auto block = out.block(i * q, j * q, q, q);
    block.noalias() = -ks(i, j) * (phi[iu] * phi[static_cast<std::size_t>(j)].adjoint());
    block.diagonal().array() += t2 * kd(i, j);
  }
}

}  // namespace

PickAssembly pick_matrix(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                         const MultiplierTable& phi, double t) {
  check_pick_inputs(src, dst, phi, t);
  const Index n = static_cast<Index>(src.size());
  const Index q = phi.q();
  const ComplexMatrix& ks = src.gram().matrix();
  const ComplexMatrix& kd = dst.gram().matrix();
  ComplexMatrix out(n * q, n * q);
  const double t2 = t * t;
#pragma omp parallel for schedule(static) if (n * q >= 96)
  for (Index i = 0; i < n; ++i) assemble_block_row(ks, kd, phi, t2, i, out);
  return {HermitianMatrix(out), t};
}

PickAssembly pick_matrix_serial(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                                const MultiplierTable& phi, double t) {
  check_pick_inputs(src, dst, phi, t);
  const Index n = static_cast<Index>(src.size());
  const Index q = phi.q();
  const ComplexMatrix& ks = src.gram().matrix();
  const ComplexMatrix& kd = dst.gram().matrix();
  ComplexMatrix out(n * q, n * q);
  for (Index i = 0; i < n; ++i) assemble_block_row(ks, kd, phi, t * t, i, out);
  return {HermitianMatrix(out), t};
}

bool is_contractive_at(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                       const MultiplierTable& phi, double t, double rtol) {
  return is_psd(pick_matrix(src, dst, phi, t).blocks, rtol).verdict;
}

double multiplier_norm(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                       const MultiplierTable& phi, const NormOptions& opts) {
  if (!(opts.tol > 0.0)) throw InputError("multiplier_norm: tolerance must be positive");
  check_pick_inputs(src, dst, phi, 0.0);
  const auto feasible = [&](double t) {
    return is_psd(pick_matrix(src, dst, phi, t).blocks, opts.psd_rtol).verdict;
  };

  // Diagonal blocks give ||Phi_i||^2 K_src(i,i) <= t^2 K_dst(i,i).
  double lo = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto ii = static_cast<Index>(i);
    const double ratio = src.gram()(ii, ii).real() / dst.gram()(ii, ii).real();
    lo = std::max(lo, operator_norm(phi[i]) * std::sqrt(ratio));
  }
  if (feasible(lo)) return lo;

  double hi = std::max(1.0, lo);
  int steps = 0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++steps > opts.max_steps) throw NumericError("multiplier_norm: no feasible upper bracket");
  }
  steps = 0;
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
    if (++steps > opts.max_steps) throw NumericError("multiplier_norm: bisection did not converge");
  }
  return hi;
}

double multiplier_norm(const FiniteKernelSpace& space, const MultiplierTable& phi,
                       const NormOptions& opts) {
  return multiplier_norm(space, space, phi, opts);
}

MultiplierTable transpose(const MultiplierTable& phi) {
  std::vector<ComplexMatrix> v;
  v.reserve(phi.size());
  for (const auto& m : phi.values()) v.push_back(m.transpose());
  return MultiplierTable(phi.p(), phi.q(), std::move(v), phi.space_id());
}

MultiplierTable reshape_column_to_matrix(const MultiplierTable& psi, Index m, Index n) {
  if (m < 1 || n < 1 || psi.p() != 1 || psi.q() != m * n)
    throw InputError("reshape_column_to_matrix: expected a column of length M*N");
  std::vector<ComplexMatrix> v;
  v.reserve(psi.size());
  for (const auto& col : psi.values()) v.push_back(col.reshaped(m, n));
  return MultiplierTable(m, n, std::move(v), psi.space_id());
}

MultiplierTable vectorize(const MultiplierTable& matrix_table) {
  std::vector<ComplexMatrix> v;
  v.reserve(matrix_table.size());
  for (const auto& mat : matrix_table.values()) v.push_back(mat.reshaped(mat.size(), 1));
  return MultiplierTable(matrix_table.q() * matrix_table.p(), 1, std::move(v),
                         matrix_table.space_id());
}

MultiplierTable multiply(const MultiplierTable& a, const MultiplierTable& b) {
  if (a.p() != b.q() || a.size() != b.size()) throw InputError("multiply: shape mismatch");
  std::vector<ComplexMatrix> v;
  v.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a[i] * b[i]);
  return MultiplierTable(a.q(), b.p(), std::move(v), a.space_id());
}

MultiplierTable random_contractive_table(const FiniteKernelSpace& src, const FiniteKernelSpace& dst,
                                         Index q, Index p, std::uint64_t seed, double margin) {
  if (q < 1 || p < 1) throw InputError("random_contractive_table: shape must be positive");
  if (!(margin > 0.0 && margin <= 1.0)) throw InputError("random_contractive_table: margin must be in (0, 1]");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<ComplexMatrix> v;
    v.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) v.push_back(rng.complex_normal(q, p));
    MultiplierTable table(q, p, std::move(v));
    const double norm = multiplier_norm(src, dst, table);
    if (norm > 0.0) return table.scaled(margin / norm);
  }
  throw NumericError("random_contractive_table: degenerate samples");
}

MultiplierTable random_contractive_column(const FiniteKernelSpace& space, Index n_entries,
                                          std::uint64_t seed, double margin) {
  return random_contractive_table(space, space, n_entries, 1, seed, margin);
}

double jm_lower_bound(const FiniteKernelSpace& space, const MultiplierTable& psi, int trials,
                      std::uint64_t seed) {
  if (trials < 1) throw InputError("jm_lower_bound: trials must be >= 1");
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const MultiplierTable phi =
        random_contractive_column(space, psi.p(), substream_seed(seed, static_cast<std::uint64_t>(t)), 1.0);
    best = std::max(best, multiplier_norm(space, multiply(psi, phi)));
  }
  return best;
}

MultiplierTable coordinate_row(const FiniteKernelSpace& space) {
  std::vector<ComplexMatrix> v;
  v.reserve(space.size());
  for (const auto& pt : space.points()) v.push_back(pt.coords().transpose());
  return MultiplierTable(1, space.model().dim(), std::move(v));
}

MultiplierTable coordinate_block_row(const FiniteKernelSpace& space, Index n_blocks) {
  const Index d = space.model().dim();
  std::vector<ComplexMatrix> v;
  v.reserve(space.size());
  for (const auto& pt : space.points()) {
    ComplexMatrix m = ComplexMatrix::Zero(n_blocks, d * n_blocks);
    for (Index b = 0; b < n_blocks; ++b) m.block(b, b * d, 1, d) = pt.coords().transpose();
    v.push_back(std::move(m));
  }
  return MultiplierTable(n_blocks, d * n_blocks, std::move(v));
}

}  // namespace crlab
