#include "crlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace crlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex one_minus_inner(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw InputError("kernel_eval: points have different dimensions");
  const Complex ip = inner(z.coords(), w.coords());
  if (std::abs(ip) >= 1.0) throw DomainError("kernel_eval: |<z, w>| >= 1");
  return 1.0 - ip;
}

}  // namespace

BallPoint::BallPoint(ComplexVector coords) : coords_(std::move(coords)) {
  if (!all_finite(coords_)) throw InputError("BallPoint: non-finite coordinate");
  if (!(coords_.norm() < 1.0)) throw InputError("BallPoint: point is not in the open unit ball");
}

BallPoint::BallPoint(std::initializer_list<Complex> coords)
    : BallPoint([&] {
        ComplexVector v(static_cast<Index>(coords.size()));
        Index i = 0;
        for (const Complex& c : coords) v(i++) = c;
        return v;
      }()) {}

Complex inner(const ComplexVector& z, const ComplexVector& w) { return w.dot(z); }

const ComplexVector& NormalizedCP::embedding(const std::string& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw InputError("NormalizedCP: unknown point id '" + id + "'");
  return b[static_cast<std::size_t>(it - ids.begin())];
}

KernelModel::KernelModel(Variant v) : v_(std::move(v)) {
  std::visit(Overloaded{
                 [](const DruryArveson& m) {
                   if (m.d < 1) throw InputError("DruryArveson: dimension must be >= 1");
                 },
                 [](const PowerKernel& m) {
                   if (m.d < 1) throw InputError("PowerKernel: dimension must be >= 1");
                   if (!(m.a > 0.0)) throw InputError("PowerKernel: exponent must be positive");
                 },
                 [](const NormalizedCP& m) {
                   if (m.ids.size() != m.b.size() || m.ids.empty())
                     throw InputError("NormalizedCP: ids and embedding table must match and be nonempty");
                   std::set<std::string> seen(m.ids.begin(), m.ids.end());
                   if (seen.size() != m.ids.size()) throw InputError("NormalizedCP: duplicate id");
                   for (const auto& v : m.b) {
                     if (v.size() != m.b.front().size())
                       throw InputError("NormalizedCP: embedding values have different lengths");
                     if (!(v.norm() < 1.0)) throw InputError("NormalizedCP: embedding value outside the ball");
                   }
                   if (!m.basepoint.empty() && m.embedding(m.basepoint).norm() != 0.0)
                     throw InputError("NormalizedCP: embedding must vanish at the base point");
                 },
                 [](const PairKernel& m) {
                   if (!m.source || !m.target) throw InputError("PairKernel: missing kernel");
                   if (m.source->dim() != m.target->dim())
                     throw InputError("PairKernel: kernels act on different dimensions");
                 },
                 [](const RescaledKernel& m) {
                   if (!m.base) throw InputError("RescaledKernel: missing base kernel");
                   if (m.anchor.size() != m.base->dim())
                     throw InputError("RescaledKernel: anchor has the wrong dimension");
                 },
             },
             v_);
}

Index KernelModel::dim() const {
  return std::visit(Overloaded{
                        [](const DruryArveson& m) { return m.d; },
                        [](const PowerKernel& m) { return m.d; },
                        [](const NormalizedCP& m) { return m.b.front().size(); },
                        [](const PairKernel& m) { return m.target->dim(); },
                        [](const RescaledKernel& m) { return m.base->dim(); },
                    },
                    v_);
}

std::string KernelModel::name() const {
  return std::visit(Overloaded{
                        [](const DruryArveson&) { return std::string("drury_arveson"); },
                        [](const PowerKernel&) { return std::string("power"); },
                        [](const NormalizedCP&) { return std::string("normalized_cp"); },
                        [](const PairKernel&) { return std::string("pair"); },
                        [](const RescaledKernel&) { return std::string("rescaled"); },
                    },
                    v_);
}

KernelModelPtr make_model(KernelModel::Variant v) {
  return std::make_shared<const KernelModel>(std::move(v));
}

Complex kernel_eval(const KernelModel& model, const BallPoint& z, const BallPoint& w) {
  if (z.dim() != model.dim() || w.dim() != model.dim())
    throw InputError("kernel_eval: point dimension does not match the model");
  return std::visit(Overloaded{
                        [&](const DruryArveson&) { return 1.0 / one_minus_inner(z, w); },
                        [&](const PowerKernel& m) { return std::pow(one_minus_inner(z, w), -m.a); },
                        [&](const NormalizedCP&) { return 1.0 / one_minus_inner(z, w); },
                        [&](const PairKernel& m) { return kernel_eval(*m.target, z, w); },
                        [&](const RescaledKernel& m) {
                          const BallPoint anchor(m.anchor);
                          const Complex kzw = kernel_eval(*m.base, z, w);
                          const Complex kaa = kernel_eval(*m.base, anchor, anchor);
                          const Complex kza = kernel_eval(*m.base, z, anchor);
                          const Complex kaw = kernel_eval(*m.base, anchor, w);
                          if (std::abs(kza) == 0.0 || std::abs(kaw) == 0.0)
                            throw DomainError("kernel_eval: rescaling by a vanishing kernel value");
                          return kzw * kaa / (kza * kaw);
                        },
                    },
                    model.variant());
}

FiniteKernelSpace::FiniteKernelSpace(KernelModelPtr model, std::vector<BallPoint> points,
                                     std::vector<std::string> ids)
    : model_(std::move(model)), points_(std::move(points)), ids_(std::move(ids)) {
  if (!model_) throw InputError("FiniteKernelSpace: missing model");
  if (points_.empty()) throw InputError("FiniteKernelSpace: empty point set");
  if (!ids_.empty() && ids_.size() != points_.size())
    throw InputError("FiniteKernelSpace: ids and points differ in length");
  const Index d = model_->dim();
  for (const auto& p : points_)
    if (p.dim() != d) throw InputError("FiniteKernelSpace: point dimension does not match the model");

  if (model_->get<NormalizedCP>() != nullptr) {
    std::set<std::string> seen(ids_.begin(), ids_.end());
    if (ids_.size() != points_.size() || seen.size() != ids_.size())
      throw InputError("FiniteKernelSpace: NormalizedCP spaces need distinct point ids");
  } else {
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (points_[i] == points_[j]) {
          std::ostringstream os;
          os << "FiniteKernelSpace: duplicate points at indices " << i << " and " << j;
          throw InputError(os.str());
        }
  }

  const Index n = static_cast<Index>(points_.size());
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      g(i, j) = kernel_eval(*model_, points_[i], points_[j]);
      g(j, i) = std::conj(g(i, j));
    }
  gram_ = HermitianMatrix(g);
  const PsdReport report = is_psd(gram_, 1e-9);
  if (!report.verdict) throw InternalError("FiniteKernelSpace: Gram matrix is not positive semidefinite");
}

FiniteKernelSpace FiniteKernelSpace::from_ids(KernelModelPtr model, std::vector<std::string> ids) {
  const auto* cp = model ? model->get<NormalizedCP>() : nullptr;
  if (cp == nullptr) throw InputError("from_ids: model is not a NormalizedCP model");
  std::vector<BallPoint> pts;
  pts.reserve(ids.size());
  for (const auto& id : ids) pts.emplace_back(cp->embedding(id));
  return FiniteKernelSpace(std::move(model), std::move(pts), std::move(ids));
}

std::size_t FiniteKernelSpace::origin_index() const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].is_origin()) return i;
  return points_.size();
}

bool FiniteKernelSpace::same_points(const FiniteKernelSpace& other) const {
  return points_ == other.points_;
}

const HermitianMatrix& gram(const FiniteKernelSpace& space) { return space.gram(); }

FiniteKernelSpace normalize_at(const FiniteKernelSpace& space, std::size_t index) {
  if (index >= space.size()) throw InputError("normalize_at: index out of range");
  const BallPoint& anchor = space.point(index);
  for (const auto& p : space.points())
    if (std::abs(kernel_eval(space.model(), p, anchor)) == 0.0)
      throw DomainError("normalize_at: kernel vanishes against the anchor point");
  auto model = make_model(RescaledKernel{space.model_ptr(), anchor.coords()});
  return FiniteKernelSpace(model, space.points(), space.ids());
}

FiniteKernelSpace restrict(const FiniteKernelSpace& space, std::span<const std::size_t> subset) {
  if (subset.empty()) throw InputError("restrict: empty subset");
  std::vector<BallPoint> pts;
  std::vector<std::string> ids;
  for (std::size_t i : subset) {
    if (i >= space.size()) throw InputError("restrict: index out of range");
    pts.push_back(space.point(i));
    if (!space.ids().empty()) ids.push_back(space.ids()[i]);
  }
  return FiniteKernelSpace(space.model_ptr(), std::move(pts), std::move(ids));
}

FiniteKernelSpace embed_to_ball(const FiniteKernelSpace& space) {
  if (space.model().get<NormalizedCP>() == nullptr)
    throw InputError("embed_to_ball: space does not carry a NormalizedCP model");
  const Index n = static_cast<Index>(space.size());
  ComplexMatrix table(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      table(i, j) = inner(space.point(static_cast<std::size_t>(i)).coords(),
                          space.point(static_cast<std::size_t>(j)).coords());
  GramFactor f;
  try {
    f = gram_factor(HermitianMatrix(table), 1e-13);
  } catch (const DomainError& e) {
    throw InternalError(std::string("embed_to_ball: embedding table is not PSD: ") + e.what());
  }
  const Index d = std::max<Index>(f.rank, 1);
  std::vector<BallPoint> pts;
  pts.reserve(space.size());
  for (Index i = 0; i < n; ++i) {
    ComplexVector lambda = ComplexVector::Zero(d);
    if (f.rank > 0) lambda.head(f.rank) = f.factor.row(i).transpose();
    pts.emplace_back(std::move(lambda));
  }
  return FiniteKernelSpace(make_model(DruryArveson{d}), std::move(pts), space.ids());
}

FiniteKernelSpace pair_source_space(const FiniteKernelSpace& space) {
  const auto* pair = space.model().get<PairKernel>();
  if (pair == nullptr) throw InputError("pair_source_space: not a kernel pair");
  return FiniteKernelSpace(pair->source, space.points(), space.ids());
}

FiniteKernelSpace pair_target_space(const FiniteKernelSpace& space) {
  const auto* pair = space.model().get<PairKernel>();
  if (pair == nullptr) throw InputError("pair_target_space: not a kernel pair");
  return FiniteKernelSpace(pair->target, space.points(), space.ids());
}

FiniteKernelSpace drury_arveson_space(Index d, std::vector<BallPoint> points) {
  return FiniteKernelSpace(make_model(DruryArveson{d}), std::move(points));
}

FiniteKernelSpace power_kernel_space(Index d, double a, std::vector<BallPoint> points) {
  return FiniteKernelSpace(make_model(PowerKernel{d, a}), std::move(points));
}

}  // namespace crlab
