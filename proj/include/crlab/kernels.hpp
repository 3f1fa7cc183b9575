#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crlab/linalg.hpp"

namespace crlab {

/// Point of the open unit ball of C^d.
class BallPoint {
 public:
  BallPoint() = default;
  explicit BallPoint(ComplexVector coords);
  BallPoint(std::initializer_list<Complex> coords);

  static BallPoint origin(Index d) { return BallPoint(ComplexVector::Zero(d)); }

  Index dim() const { return coords_.size(); }
  const ComplexVector& coords() const { return coords_; }
  Complex operator[](Index i) const { return coords_(i); }
  double norm() const { return coords_.norm(); }
  bool is_origin() const { return coords_.isZero(0.0); }

  friend bool operator==(const BallPoint& a, const BallPoint& b) {
    return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
  }

 private:
  ComplexVector coords_;
};

/// <z, w> = sum_k z_k conj(w_k), linear in the first argument.
Complex inner(const ComplexVector& z, const ComplexVector& w);

class KernelModel;
using KernelModelPtr = std::shared_ptr<const KernelModel>;

/// 1 / (1 - <z, w>) on the ball of C^d.
struct DruryArveson {
  Index d = 1;
};

/// (1 - <z, w>)^{-a}, principal branch.
struct PowerKernel {
  Index d = 1;
  double a = 1.0;
};

/// 1 / (1 - <b(x), b(y)>) for an abstract finite set of ids with embedding b.
/// Points of a space built on this model carry the embedded values b(x).
struct NormalizedCP {
  std::vector<std::string> ids;
  std::vector<ComplexVector> b;
  std::string basepoint;

  const ComplexVector& embedding(const std::string& id) const;
};

/// Kernel pair (S, K) with K/S >= 0. Evaluation uses the target K; `factor`
/// optionally stores rows G(x_i) with (K/S)(x_i, x_j) = G(x_i) G(x_j)^*.
struct PairKernel {
  KernelModelPtr source;
  KernelModelPtr target;
  std::vector<ComplexMatrix> factor;
};

/// K(z, w) K(z0, z0) / (K(z, z0) K(z0, w)), normalized at the anchor z0.
struct RescaledKernel {
  KernelModelPtr base;
  ComplexVector anchor;
};

class KernelModel {
 public:
  using Variant = std::variant<DruryArveson, PowerKernel, NormalizedCP, PairKernel, RescaledKernel>;

  KernelModel(Variant v);  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }
  /// Ambient dimension of the points the model accepts.
  Index dim() const;
  std::string name() const;

  template <class T>
  const T* get() const { return std::get_if<T>(&v_); }

 private:
  Variant v_;
};

KernelModelPtr make_model(KernelModel::Variant v);

Complex kernel_eval(const KernelModel& model, const BallPoint& z, const BallPoint& w);

/// Finite point configuration with a kernel and its Gram matrix, computed once.
class FiniteKernelSpace {
 public:
  FiniteKernelSpace(KernelModelPtr model, std::vector<BallPoint> points,
                    std::vector<std::string> ids = {});

  /// Space over the given ids of a NormalizedCP model.
  static FiniteKernelSpace from_ids(KernelModelPtr model, std::vector<std::string> ids);

  const KernelModel& model() const { return *model_; }
  const KernelModelPtr& model_ptr() const { return model_; }
  const std::vector<BallPoint>& points() const { return points_; }
  const BallPoint& point(std::size_t i) const { return points_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t size() const { return points_.size(); }
  const HermitianMatrix& gram() const { return gram_; }

  /// Index of the point equal to the origin, or size() if there is none.
  std::size_t origin_index() const;

  bool same_points(const FiniteKernelSpace& other) const;

 private:
  KernelModelPtr model_;
  std::vector<BallPoint> points_;
  std::vector<std::string> ids_;
  HermitianMatrix gram_;
};

const HermitianMatrix& gram(const FiniteKernelSpace& space);

/// Rescaled space whose kernel is normalized at the point with the given index.
FiniteKernelSpace normalize_at(const FiniteKernelSpace& space, std::size_t index);

FiniteKernelSpace restrict(const FiniteKernelSpace& space, std::span<const std::size_t> subset);

/// Drury-Arveson space over points lambda_i with <lambda_i, lambda_j> = <b(x_i), b(x_j)>.
FiniteKernelSpace embed_to_ball(const FiniteKernelSpace& space);

/// For a space with a PairKernel model, the space of the source kernel S on the same points.
FiniteKernelSpace pair_source_space(const FiniteKernelSpace& space);
FiniteKernelSpace pair_target_space(const FiniteKernelSpace& space);

/// Convenience constructors.
FiniteKernelSpace drury_arveson_space(Index d, std::vector<BallPoint> points);
FiniteKernelSpace power_kernel_space(Index d, double a, std::vector<BallPoint> points);

}  // namespace crlab
