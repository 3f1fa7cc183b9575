#include "crlab/moebius.hpp"

#include <cmath>

namespace crlab {

namespace {

constexpr double kDenominatorFloor = 1e-14;

void check_pair(const ComplexVector& a, const ComplexVector& z, const char* who) {
  if (a.size() != z.size()) throw InputError(std::string(who) + ": dimension mismatch");
  if (!(a.norm() < 1.0)) throw InputError(std::string(who) + ": a must lie in the open ball");
}

}  // namespace

ComplexVector involution_eval(const ComplexVector& a, const ComplexVector& z) {
  check_pair(a, z, "involution_eval");
  if (z.norm() > 1.0 + 1e-12) throw InputError("involution_eval: z outside the closed ball");
  const double aa = a.squaredNorm();
  if (aa == 0.0) return -z;
  const Complex za = inner(z, a);
  const Complex denom = 1.0 - za;
  if (std::abs(denom) < kDenominatorFloor) throw DomainError("involution_eval: 1 - <z, a> vanishes");
  const ComplexVector pz = a * (za / aa);
  const ComplexVector qz = z - pz;
  const double s = std::sqrt(1.0 - aa);
  return (a - pz - s * qz) / denom;
}

ComplexVector column_mobius_eval(const ComplexVector& a, const ComplexVector& z) {
  check_pair(a, z, "column_mobius_eval");
  const Index n = a.size();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix root = hermitian_sqrt(HermitianMatrix(id - a * a.adjoint()));
  const ComplexMatrix resolvent_arg = id - z * a.adjoint();
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent_arg);
  if (std::abs(lu.determinant()) < kDenominatorFloor)
    throw DomainError("column_mobius_eval: I - z a^* is singular");
  const double scale = 1.0 / std::sqrt(1.0 - a.squaredNorm());
  return root * lu.solve(ComplexVector(a - z)) * scale;
}

BallAutomorphism::BallAutomorphism(ComplexVector a, ComplexMatrix unitary)
    : a_(std::move(a)), unitary_(std::move(unitary)) {
  if (!(a_.norm() < 1.0)) throw InputError("BallAutomorphism: a must lie in the open ball");
  if (unitary_.rows() != a_.size() || unitary_.cols() != a_.size())
    throw InputError("BallAutomorphism: unitary has the wrong shape");
  const ComplexMatrix id = ComplexMatrix::Identity(a_.size(), a_.size());
  if (max_abs(unitary_.adjoint() * unitary_ - id) > 1e-12)
    throw InputError("BallAutomorphism: matrix is not unitary");
}

BallAutomorphism BallAutomorphism::involution(const ComplexVector& a) {
  return BallAutomorphism(a, ComplexMatrix::Identity(a.size(), a.size()));
}

BallAutomorphism BallAutomorphism::identity(Index d) {
  // theta_0 o (-I)^* = id.
  BallAutomorphism id(ComplexVector::Zero(d), -ComplexMatrix::Identity(d, d));
  id.is_identity_ = true;
  return id;
}

ComplexVector BallAutomorphism::operator()(const ComplexVector& z) const {
  if (is_identity_) return z;
  return involution_eval(a_, unitary_.adjoint() * z);
}

ComplexVector BallAutomorphism::inverse(const ComplexVector& w) const {
  if (is_identity_) return w;
  return unitary_ * involution_eval(a_, w);
}

double kernel_identity_residual(const BallAutomorphism& theta, const ComplexVector& z,
                                const ComplexVector& w) {
  const ComplexVector a = theta.zero_preimage();
  const Complex lhs = 1.0 - inner(theta(z), theta(w));
  const Complex rhs = (1.0 - inner(a, a)) * (1.0 - inner(z, w)) / ((1.0 - inner(z, a)) * (1.0 - inner(a, w)));
  return std::abs(lhs - rhs);
}

double column_defect_residual(const ComplexVector& a, const ComplexVector& z, const ComplexVector& w) {
  const Index n = a.size();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexVector tz = column_mobius_eval(a, z);
  const ComplexVector tw = column_mobius_eval(a, w);
  const ComplexMatrix lhs = id - tz * tw.adjoint();
  const ComplexMatrix root = hermitian_sqrt(HermitianMatrix(id - a * a.adjoint()));
  const ComplexMatrix left = (id - z * a.adjoint()).inverse();
  const ComplexMatrix right = (id - a * w.adjoint()).inverse();
  const ComplexMatrix rhs = root * left * (id - z * w.adjoint()) * right * root;
  return max_abs(lhs - rhs);
}

std::pair<FiniteKernelSpace, MultiplierTable> pull_back_domain(const FiniteKernelSpace& space,
                                                               const MultiplierTable& phi,
                                                               const BallAutomorphism& theta) {
  if (space.model().get<DruryArveson>() == nullptr)
    throw InputError("pull_back_domain: requires a Drury-Arveson space");
  if (theta.dim() != space.model().dim()) throw InputError("pull_back_domain: dimension mismatch");
  if (phi.size() != space.size()) throw InputError("pull_back_domain: table size mismatch");
  std::vector<BallPoint> pts;
  pts.reserve(space.size());
  for (const auto& p : space.points()) {
    ComplexVector image = theta.inverse(p.coords());
    if (!(image.norm() < 1.0)) throw InternalError("pull_back_domain: preimage left the open ball");
    pts.emplace_back(std::move(image));
  }
  // (Phi o theta)(theta^{-1}(p_i)) = Phi(p_i): the values are carried over unchanged.
  return {FiniteKernelSpace(space.model_ptr(), std::move(pts), space.ids()), phi};
}

MultiplierTable apply_range_automorphism(const MultiplierTable& phi, const BallAutomorphism& theta) {
  const bool column = phi.p() == 1;
  const bool row = phi.q() == 1;
  if (!column && !row) throw InputError("apply_range_automorphism: table is neither a column nor a row");
  const Index len = column ? phi.q() : phi.p();
  if (theta.dim() != len) throw InputError("apply_range_automorphism: dimension mismatch");
  std::vector<ComplexMatrix> out;
  out.reserve(phi.size());
  for (const auto& v : phi.values()) {
    const ComplexVector x = column ? ComplexVector(v.col(0)) : ComplexVector(v.row(0).transpose());
    if (x.norm() > 1.0 + 1e-10)
      throw DomainError("apply_range_automorphism: pointwise norm exceeds 1");
    const ComplexVector y = column_mobius_eval(theta.a(), theta.unitary().adjoint() * x);
    out.push_back(column ? ComplexMatrix(y) : ComplexMatrix(y.transpose()));
  }
  return MultiplierTable(phi.q(), phi.p(), std::move(out), phi.space_id());
}

}  // namespace crlab
