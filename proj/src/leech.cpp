#include "crlab/leech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crlab {

ComplexMatrix Colligation::stacked() const {
  ComplexMatrix m(e + r, p + d * r);
  m << alpha, beta, gamma, delta;
  return m;
}

TransferMultiplier::TransferMultiplier(Colligation c) : c_(std::move(c)) {
  if (c_.alpha.rows() != c_.e || c_.alpha.cols() != c_.p || c_.beta.rows() != c_.e ||
      c_.beta.cols() != c_.d * c_.r || c_.gamma.rows() != c_.r || c_.gamma.cols() != c_.p ||
      c_.delta.rows() != c_.r || c_.delta.cols() != c_.d * c_.r)
    throw InputError("TransferMultiplier: colligation blocks have inconsistent shapes");
}

ComplexMatrix TransferMultiplier::operator()(const ComplexVector& w) const {
  if (w.size() != c_.d) throw InputError("TransferMultiplier: point has the wrong dimension");
  if (!(w.norm() < 1.0)) throw InputError("TransferMultiplier: point outside the open ball");
  if (c_.r == 0) return c_.alpha.adjoint();
  const Index r = c_.r;
  // (conj(w) (x) I_r) : C^r -> C^{d r}
  ComplexMatrix wbar(c_.d * r, r);
  for (Index m = 0; m < c_.d; ++m)
    wbar.block(m * r, 0, r, r) = std::conj(w(m)) * ComplexMatrix::Identity(r, r);
  const ComplexMatrix resolvent_arg = ComplexMatrix::Identity(r, r) - c_.delta * wbar;
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent_arg);
  if (!(std::abs(lu.determinant()) > 0.0))
    throw InternalError("TransferMultiplier: singular resolvent");
  const ComplexMatrix adj = c_.alpha + c_.beta * wbar * lu.solve(c_.gamma);
  return adj.adjoint();
}

MultiplierTable TransferMultiplier::on(const FiniteKernelSpace& space) const {
  std::vector<ComplexMatrix> v;
  v.reserve(space.size());
  for (const auto& pt : space.points()) v.push_back((*this)(pt.coords()));
  return MultiplierTable(c_.p, c_.e, std::move(v));
}

namespace {

void require_drury_arveson(const FiniteKernelSpace& space, const char* who) {
  if (space.model().get<DruryArveson>() == nullptr)
    throw InputError(std::string(who) + ": requires a Drury-Arveson space");
}

/// [K_ij A_i B_j^*] for tables with a common row count.
ComplexMatrix weighted_outer(const FiniteKernelSpace& space, const MultiplierTable& a,
                             const MultiplierTable& b) {
  const Index n = static_cast<Index>(space.size());
  const Index q = a.q();
  ComplexMatrix out(n * q, n * q);
  const ComplexMatrix& k = space.gram().matrix();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out.block(i * q, j * q, q, q) =
          k(i, j) * (a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)].adjoint());
  return out;
}

double max_residual(const MultiplierTable& phi, const MultiplierTable& theta, const MultiplierTable& psi) {
  double res = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) res = std::max(res, max_abs(phi[i] - theta[i] * psi[i]));
  return res;
}

}  // namespace

LeechResult leech_factor(const FiniteKernelSpace& space, const MultiplierTable& theta,
                         const MultiplierTable& phi, const LeechOptions& opts) {
  require_drury_arveson(space, "leech_factor");
  if (theta.size() != space.size() || phi.size() != space.size())
    throw InputError("leech_factor: table size does not match the space");
  if (theta.q() != phi.q()) throw InputError("leech_factor: Theta and Phi have different row counts");

  const Index n = static_cast<Index>(space.size());
  const Index nn = phi.q();
  const Index p = theta.p();
  const Index e = phi.p();
  const Index d = space.model().dim();

  const ComplexMatrix theta_part = weighted_outer(space, theta, theta);
  const double scale = std::max(max_abs(theta_part), 1e-300);
  const HermitianMatrix l(theta_part - weighted_outer(space, phi, phi));
  const PsdReport hypothesis = is_psd(HermitianMatrix(l.matrix() / scale), opts.hypothesis_rtol);
  if (!hypothesis.verdict)
    throw DomainError("leech_factor: K (Theta Theta^* - Phi Phi^*) is not positive", hypothesis);

  // Eigenvalues below rank_tol * scale are dropped; L may be slightly indefinite
  // at rounding level, so the factorization runs on L + a clamp of those values.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(l.matrix());
  const auto& ev = es.eigenvalues();
  const double threshold = opts.rank_tol * std::max(scale, ev(ev.size() - 1));
  std::vector<Index> kept;
  for (Index k = ev.size() - 1; k >= 0; --k)
    if (ev(k) > threshold) kept.push_back(k);
  const Index r = static_cast<Index>(kept.size());
  ComplexMatrix h(n * nn, r);
  for (Index c = 0; c < r; ++c) h.col(c) = es.eigenvectors().col(kept[c]) * std::sqrt(ev(kept[c]));

  // Lurking isometry: [Theta_i^* xi; (conj(l_i) (x) I_r) H_i^* xi] -> [Phi_i^* xi; H_i^* xi].
  const Index cols = n * nn;
  ComplexMatrix sources = ComplexMatrix::Zero(p + d * r, cols);
  ComplexMatrix targets = ComplexMatrix::Zero(e + r, cols);
  for (Index i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const ComplexVector& lam = space.point(iu).coords();
    const ComplexMatrix hi_adj = h.middleRows(i * nn, nn).adjoint();  // r x N
    for (Index k = 0; k < nn; ++k) {
      const Index c = i * nn + k;
      sources.block(0, c, p, 1) = theta[iu].row(k).adjoint();
      for (Index m = 0; m < d; ++m) sources.block(p + m * r, c, r, 1) = std::conj(lam(m)) * hi_adj.col(k);
      targets.block(0, c, e, 1) = phi[iu].row(k).adjoint();
      targets.block(e, c, r, 1) = hi_adj.col(k);
    }
  }
  const double gram_scale = std::max(1.0, max_abs(sources.adjoint() * sources));
  const ComplexMatrix v = extend_partial_isometry(sources, targets, opts.gram_tol * gram_scale);

  Colligation c;
  c.p = p;
  c.e = e;
  c.r = r;
  c.d = d;
  c.alpha = v.topLeftCorner(e, p);
  c.beta = v.topRightCorner(e, d * r);
  c.gamma = v.bottomLeftCorner(r, p);
  c.delta = v.bottomRightCorner(r, d * r);

  TransferMultiplier transfer(std::move(c));
  MultiplierTable psi = transfer.on(space);
  LeechResult result{transfer, psi, hypothesis, max_residual(phi, theta, psi), false};
  result.contractive = is_contractive_at(space, space, psi, 1.0 + opts.contractive_slack);
  return result;
}

OriginFactor factor_at_origin(const FiniteKernelSpace& space, const MultiplierTable& phi) {
  require_drury_arveson(space, "factor_at_origin");
  const std::size_t origin = space.origin_index();
  if (origin == space.size()) throw InputError("factor_at_origin: 0 is not a point of the space");
  if (phi.p() != 1) throw InputError("factor_at_origin: expected a column");
  if (phi.size() != space.size()) throw InputError("factor_at_origin: table size mismatch");
  if (!phi[origin].isZero(0.0)) throw InputError("factor_at_origin: column does not vanish at 0");

  const Index nn = phi.q();
  const Index d = space.model().dim();
  OriginFactor out;
  out.phi_norm = multiplier_norm(space, phi);
  if (out.phi_norm > 1.0 + 1e-8) throw DomainError("factor_at_origin: column is not contractive");
  const MultiplierTable theta = coordinate_block_row(space, nn);
  if (out.phi_norm == 0.0) {
    out.psi = MultiplierTable::zeros(space.size(), d * nn, 1);
    return out;
  }
  // The bisection tolerance is absolute, so for small norms the first estimate is refined
  // at unit scale; the result is the feasible end of the second bracket.
  const double refine = multiplier_norm(space, phi.scaled(1.0 / out.phi_norm));
  const double scale = out.phi_norm * refine;
  const LeechResult lr = leech_factor(space, theta, phi.scaled(1.0 / scale));
  out.psi = lr.table.scaled(scale);
  out.psi_norm = multiplier_norm(space, out.psi);
  out.factor_residual = max_residual(phi, theta, out.psi);
  return out;
}

SchurReduction schur_reduce(const FiniteKernelSpace& space, const MultiplierTable& phi, double rtol) {
  require_drury_arveson(space, "schur_reduce");
  const std::size_t origin = space.origin_index();
  if (origin == space.size()) throw InputError("schur_reduce: 0 is not a point of the space");
  if (phi.size() != space.size()) throw InputError("schur_reduce: table size mismatch");
  if (!phi[origin].isZero(0.0)) throw InputError("schur_reduce: Phi(0) must vanish");

  SchurReduction out;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (i != origin) out.e_indices.push_back(i);
  const Index m = static_cast<Index>(out.e_indices.size());
  const Index q = phi.q();
  const ComplexMatrix& k = space.gram().matrix();
  ComplexMatrix red(m * q, m * q);
  const ComplexMatrix id = ComplexMatrix::Identity(q, q);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      const std::size_t i = out.e_indices[static_cast<std::size_t>(a)];
      const std::size_t j = out.e_indices[static_cast<std::size_t>(b)];
      red.block(a * q, b * q, q, q) =
          k(static_cast<Index>(i), static_cast<Index>(j)) * (id - phi[i] * phi[j].adjoint()) - id;
    }
  out.matrix = HermitianMatrix(red);
  out.reduced_verdict = is_psd(out.matrix, rtol).verdict;
  out.direct_verdict = is_psd(pick_matrix(space, space, phi, 1.0).blocks, rtol).verdict;
  return out;
}

RowLift z_row_lift(const FiniteKernelSpace& space, const MultiplierTable& psi) {
  require_drury_arveson(space, "z_row_lift");
  const std::size_t origin = space.origin_index();
  if (origin == space.size()) throw InputError("z_row_lift: 0 is not a point of the space");
  if (psi.size() != space.size()) throw InputError("z_row_lift: table size mismatch");
  if (psi.q() != space.model().dim()) throw InputError("z_row_lift: Psi must have d rows");

  std::vector<std::size_t> e_idx;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (i != origin) e_idx.push_back(i);
  if (!e_idx.empty()) {
    const FiniteKernelSpace e_space = restrict(space, e_idx);
    const double norm_e = multiplier_norm(e_space, psi.restricted(e_idx));
    if (norm_e > 1.0 + 1e-8) throw DomainError("z_row_lift: Psi restricted to E is not contractive");
  }
  RowLift out{multiply(coordinate_row(space), psi), 0.0};
  out.norm = multiplier_norm(space, out.row);
  if (out.norm > 1.0 + 1e-7) throw InternalError("z_row_lift: z Psi is not contractive");
  return out;
}

SchurStepResult schur_step(const FiniteKernelSpace& space, const MultiplierTable& phi) {
  require_drury_arveson(space, "schur_step");
  if (phi.p() != 1 || phi.size() != space.size()) throw InputError("schur_step: expected a column on the space");
  const Index d = space.model().dim();
  const Index nn = phi.q();
  const double column_norm = multiplier_norm(space, phi);
  if (column_norm > 1.0 + 1e-8) throw DomainError("schur_step: column is not contractive");

  // (1) move the first point to 0; the identity is used when it already is 0.
  const ComplexVector& first = space.point(0).coords();
  const BallAutomorphism domain_map =
      first.isZero(0.0) ? BallAutomorphism::identity(d) : BallAutomorphism::involution(first);
  auto [moved, phi1] = pull_back_domain(space, phi, domain_map);
  double zeroing = moved.point(0).norm();
  std::vector<BallPoint> pts = moved.points();
  pts[0] = BallPoint::origin(d);
  FiniteKernelSpace moved_space(moved.model_ptr(), std::move(pts), moved.ids());

  // (2) make the column vanish at 0.
  const ComplexVector c = phi1[0].col(0);
  if (c.norm() >= 1.0 - 1e-12) throw DomainError("schur_step: column has norm 1 at the base point");
  MultiplierTable phi2 = c.isZero(0.0) ? phi1 : apply_range_automorphism(phi1, BallAutomorphism::involution(c));
  {
    std::vector<ComplexMatrix> vals = phi2.values();
    zeroing = std::max(zeroing, max_abs(vals[0]));
    if (max_abs(vals[0]) > 1e-12) throw InternalError("schur_step: range automorphism missed 0");
    vals[0].setZero();
    phi2 = MultiplierTable(nn, 1, std::move(vals), phi.space_id());
  }

  // (3) factor and (4) reshape.
  const OriginFactor of = factor_at_origin(moved_space, phi2);
  MultiplierTable matrix_table = reshape_column_to_matrix(of.psi, d, nn);
  MultiplierTable row_table = multiply(coordinate_row(moved_space), matrix_table);

  double identity_residual = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    identity_residual = std::max(identity_residual, max_abs(phi2[i].transpose() - row_table[i]));

  std::optional<FiniteKernelSpace> reduced;
  if (space.size() > 1) {
    std::vector<std::size_t> e_idx(space.size() - 1);
    std::iota(e_idx.begin(), e_idx.end(), std::size_t{1});
    reduced = restrict(moved_space, e_idx);
  }
  const double row_norm = multiplier_norm(moved_space, row_table);
  return SchurStepResult{moved_space, phi2, of.psi, std::move(matrix_table), std::move(row_table),
                         std::move(reduced), column_norm, row_norm, identity_residual, zeroing};
}

PairFactor pair_factor(const FiniteKernelSpace& pair_space, const MultiplierTable& phi) {
  const auto* pair = pair_space.model().get<PairKernel>();
  if (pair == nullptr) throw InputError("pair_factor: space does not carry a kernel pair");
  const FiniteKernelSpace s_space = pair_source_space(pair_space);
  const FiniteKernelSpace k_space = pair_target_space(pair_space);
  if (phi.size() != pair_space.size()) throw InputError("pair_factor: table size mismatch");

  const Index n = static_cast<Index>(pair_space.size());
  ComplexMatrix ratio(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) ratio(i, j) = k_space.gram()(i, j) / s_space.gram()(i, j);
  const HermitianMatrix quotient(ratio);
  const PsdReport rep = is_psd(quotient, 1e-9);
  if (!rep.verdict) throw DomainError("pair_factor: K/S is not positive on the point set", rep);

  std::vector<ComplexMatrix> g_rows;
  if (!pair->factor.empty()) {
    if (pair->factor.size() != pair_space.size()) throw InputError("pair_factor: factor table size mismatch");
    ComplexMatrix gg(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        gg(i, j) = (pair->factor[static_cast<std::size_t>(i)] * pair->factor[static_cast<std::size_t>(j)].adjoint())(0, 0);
    if (max_abs(gg - quotient.matrix()) > 1e-9 * std::max(1.0, max_abs(quotient.matrix())))
      throw InputError("pair_factor: stored factor does not reproduce K/S");
    g_rows = pair->factor;
  } else {
    const GramFactor gf = gram_factor(quotient, 1e-13);
    for (Index i = 0; i < n; ++i) g_rows.push_back(gf.factor.row(i));
  }

  const double norm = multiplier_norm(s_space, k_space, phi);
  if (norm > 1.0 + 1e-8) throw DomainError("pair_factor: Phi is not a contractive multiplier");

  FiniteKernelSpace leech_space = s_space;
  if (s_space.model().get<NormalizedCP>() != nullptr) {
    leech_space = embed_to_ball(s_space);
  } else if (s_space.model().get<DruryArveson>() == nullptr) {
    throw DomainError("pair_factor: source kernel must be given in complete Pick form");
  }

  const Index q = phi.q();
  std::vector<ComplexMatrix> theta_vals;
  for (const auto& g : g_rows) {
    ComplexMatrix t = ComplexMatrix::Zero(q, g.cols() * q);
    for (Index m = 0; m < g.cols(); ++m) t.block(0, m * q, q, q).diagonal().setConstant(g(0, m));
    theta_vals.push_back(std::move(t));
  }
  const MultiplierTable g_row(q, g_rows.front().cols() * q, std::move(theta_vals));

  const LeechResult lr = leech_factor(leech_space, g_row, phi);
  PairFactor out{lr.table, g_row, max_residual(phi, g_row, lr.table), 0.0};
  out.psi_norm = multiplier_norm(leech_space, out.psi);
  return out;
}

}  // namespace crlab
