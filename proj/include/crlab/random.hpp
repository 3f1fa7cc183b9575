#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "crlab/kernels.hpp"

namespace crlab {

/// splitmix64 finalizer; used to derive independent substreams.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the substream for (seed, index). Parallel and serial loops draw
/// identical numbers for the same index.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t index) : engine_(substream_seed(seed, index)) {}

  double uniform();                      // [0, 1)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double normal();
  Complex complex_normal();              // E|z|^2 = 1
  ComplexMatrix complex_normal(Index rows, Index cols);
  ComplexMatrix haar_unitary(Index n);

  /// Uniform point of the ball of radius max_radius in C^d.
  BallPoint ball_point(Index d, double max_radius);
  /// n distinct points; the origin is included first when include_origin is set.
  std::vector<BallPoint> ball_points(Index d, std::size_t n, double max_radius,
                                     bool include_origin = false);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crlab
