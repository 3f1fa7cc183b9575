#include "crlab/random.hpp"

#include <cmath>
#include <numbers>

namespace crlab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// The distributions below are written out instead of using std::*_distribution
// so that streams are identical across standard library implementations.
double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix Rng::complex_normal(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

ComplexMatrix Rng::haar_unitary(Index n) {
  const ComplexMatrix g = complex_normal(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

BallPoint Rng::ball_point(Index d, double max_radius) {
  ComplexVector v = complex_normal(d, 1);
  double nv = v.norm();
  while (nv == 0.0) {
    v = complex_normal(d, 1);
    nv = v.norm();
  }
  const double radius = max_radius * std::pow(uniform(), 1.0 / (2.0 * static_cast<double>(d)));
  return BallPoint(ComplexVector(v * (radius / nv)));
}

std::vector<BallPoint> Rng::ball_points(Index d, std::size_t n, double max_radius,
                                        bool include_origin) {
  std::vector<BallPoint> pts;
  pts.reserve(n);
  if (include_origin && n > 0) pts.push_back(BallPoint::origin(d));
  while (pts.size() < n) {
    BallPoint p = ball_point(d, max_radius);
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && (p.coords() - q.coords()).norm() > 1e-6;
    if (fresh) pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace crlab
