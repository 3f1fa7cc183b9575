#include "crlab/diagonal_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crlab/errors.hpp"

namespace crlab {

WeightedHardySpace::WeightedHardySpace(std::vector<double> coeffs) : a_(std::move(coeffs)) {
  if (a_.size() < 9) throw InputError("WeightedHardySpace: truncation must be at least 8");
  if (a_[0] != 1.0) throw InputError("WeightedHardySpace: a_0 must equal 1");
  for (double v : a_)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("WeightedHardySpace: coefficients must be positive");
}

WeightedHardySpace alpha_example(double alpha, std::size_t m) {
  if (!(alpha > 1.0)) throw InputError("alpha_example: alpha must exceed 1");
  std::vector<double> a(m + 1, 1.0);
  if (m >= 2) a[2] = 1.0 / alpha;
  return WeightedHardySpace(std::move(a));
}

WeightedHardySpace hardy_weights(std::size_t m) { return WeightedHardySpace(std::vector<double>(m + 1, 1.0)); }

WeightedHardySpace dirichlet_weights(std::size_t m) {
  std::vector<double> a(m + 1);
  for (std::size_t n = 0; n <= m; ++n) a[n] = 1.0 / static_cast<double>(n + 1);
  return WeightedHardySpace(std::move(a));
}

namespace {

std::size_t checked_top(const WeightedHardySpace& space, const MonomialTuple& tuple) {
  if (tuple.exponents.empty()) throw InputError("MonomialTuple: empty");
  for (std::size_t i = 0; i < tuple.exponents.size(); ++i) {
    if (tuple.exponents[i] == 0) throw InputError("MonomialTuple: exponents must be positive");
    if (i > 0 && tuple.exponents[i] <= tuple.exponents[i - 1])
      throw InputError("MonomialTuple: exponents must increase");
  }
  const std::size_t kmax = tuple.exponents.back();
  if (kmax >= space.truncation()) throw InputError("MonomialTuple: exponent exceeds the truncation");
  return space.truncation() - kmax;
}

}  // namespace

// M_{z^k} e_n = z^{n+k}, and ||z^n||^2 = 1/a_n, so C^*C and RR^* are diagonal in
// the monomial basis with the entries below.
DiagonalNorm column_norm_sq(const WeightedHardySpace& space, const MonomialTuple& tuple) {
  const std::size_t top = checked_top(space, tuple);
  DiagonalNorm out;
  for (std::size_t n = 0; n <= top; ++n) {
    double s = 0.0;
    for (std::size_t k : tuple.exponents) s += space[n] / space[n + k];
    if (s > out.value) {
      out.value = s;
      out.argmax = n;
    }
  }
  out.at_edge = out.argmax == top;
  return out;
}

DiagonalNorm row_norm_sq(const WeightedHardySpace& space, const MonomialTuple& tuple) {
  checked_top(space, tuple);
  const std::size_t top = space.truncation();
  DiagonalNorm out;
  for (std::size_t n = 0; n <= top; ++n) {
    double s = 0.0;
    for (std::size_t k : tuple.exponents)
      if (k <= n) s += space[n - k] / space[n];
    if (s > out.value) {
      out.value = s;
      out.argmax = n;
    }
  }
  out.at_edge = out.argmax == top;
  return out;
}

std::vector<double> inverse_series_coeffs(const WeightedHardySpace& space, std::size_t m) {
  const auto& a = space.coeffs();
  std::vector<double> r(m + 1, 0.0);
  r[0] = 1.0;
  for (std::size_t n = 1; n <= m; ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= std::min(n, a.size() - 1); ++k) s += a[k] * r[n - k];
    r[n] = -s;
  }
  std::vector<double> b(m);
  for (std::size_t n = 1; n <= m; ++n) b[n - 1] = -r[n];
  return b;
}

PickVerdict is_complete_pick(const WeightedHardySpace& space, std::size_t m, double tol) {
  if (tol < 0.0) throw InputError("is_complete_pick: negative tolerance");
  const std::vector<double> b = inverse_series_coeffs(space, m);
  for (std::size_t n = 1; n <= m; ++n)
    if (b[n - 1] < -tol) return {false, n, b[n - 1]};
  return {};
}

}  // namespace crlab
