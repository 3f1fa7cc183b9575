#pragma once

#include <cstddef>
#include <vector>

namespace crlab {

/// Disc space with kernel sum_n a_n (z conj(w))^n, truncated at degree M.
class WeightedHardySpace {
 public:
  explicit WeightedHardySpace(std::vector<double> coeffs);

  std::size_t truncation() const { return a_.size() - 1; }
  const std::vector<double>& coeffs() const { return a_; }
  double operator[](std::size_t n) const { return a_.at(n); }

 private:
  std::vector<double> a_;
};

/// Exponents k_1 < ... < k_m of the tuple (z^{k_1}, ..., z^{k_m}).
struct MonomialTuple {
  std::vector<std::size_t> exponents;
};

/// a_n = 1 except a_2 = 1/alpha.
WeightedHardySpace alpha_example(double alpha, std::size_t m);
WeightedHardySpace hardy_weights(std::size_t m);
/// a_n = 1/(n+1).
WeightedHardySpace dirichlet_weights(std::size_t m);

struct DiagonalNorm {
  double value = 0.0;
  std::size_t argmax = 0;
  /// The maximum sits at the last admissible index, so the truncated value may be inconclusive.
  bool at_edge = false;
};

/// max_n sum_j a_n / a_{n+k_j}: squared norm of the tuple as a column.
DiagonalNorm column_norm_sq(const WeightedHardySpace& space, const MonomialTuple& tuple);
/// max_n sum_{k_j <= n} a_{n-k_j} / a_n: squared norm of the tuple as a row.
DiagonalNorm row_norm_sq(const WeightedHardySpace& space, const MonomialTuple& tuple);

/// b_1..b_m with sum b_n t^n = 1 - 1 / sum a_n t^n.
std::vector<double> inverse_series_coeffs(const WeightedHardySpace& space, std::size_t m);

struct PickVerdict {
  bool verdict = true;
  std::size_t first_violation = 0;  // 0 when none
  double value = 0.0;
};

PickVerdict is_complete_pick(const WeightedHardySpace& space, std::size_t m, double tol);

}  // namespace crlab
