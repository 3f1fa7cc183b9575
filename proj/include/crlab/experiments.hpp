#pragma once

#include <cstdint>
#include <string>

#include "crlab/serialize.hpp"

namespace crlab {

/// Invalid configuration or command line.
class UsageError : public InputError {
 public:
  using InputError::InputError;
};

struct ExperimentConfig {
  std::string command = "verify";  // verify | leech-check | moebius | reproduce | sweep
  std::string target;              // subcommand: column-row, alpha, power-kernel, ...
  std::string kernel = "drury_arveson";  // or "power" (uses kernel_a)
  double kernel_a = 1.0;
  Index d = 2;
  Index n = 5;
  Index N = 3;
  int trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  std::string out;
  std::string format = "json";
  /// Draw d in [1, d], n in [2, n], N in [1, N] per trial instead of using them as given.
  bool vary_dims = false;
  bool serial = false;
  double alpha = 4.0;
  double a_min = 0.5;
  double a_max = 3.0;
  int steps = 6;
};

Json to_json(const ExperimentConfig& c);

/// Throws UsageError on invalid values.
void validate(const ExperimentConfig& c);

/// Defaults, then the JSON file at `path` (if nonempty), then `overrides`.
/// Unknown keys and malformed JSON raise UsageError.
ExperimentConfig load_config(const std::string& path, const Json& overrides = Json::object());
void apply_json(ExperimentConfig& c, const Json& j);

struct RunReport {
  Json config;
  Json records = Json::array();  // sorted by index
  double max_violation = 0.0;
  int failures = 0;
  bool pass = true;
  double wall_time = 0.0;

  Json to_json(bool include_timing = true) const;
  std::string to_csv() const;
};

RunReport run_command(const ExperimentConfig& config);

/// Deterministic 40-point set in the ball of C^2 used for the (z1, z2)/sqrt(2) example;
/// the origin comes first.
std::vector<BallPoint> example_point_set();

}  // namespace crlab
