#include <gtest/gtest.h>

#include <cmath>

#include "crlab/diagonal_spaces.hpp"
#include "crlab/errors.hpp"
#include "crlab/linalg.hpp"
#include "crlab/random.hpp"

using namespace crlab;

namespace {

// Matrix of M_{z^k} in the orthonormal basis sqrt(a_n) z^n, truncated at degree M.
Eigen::MatrixXd shift_matrix(const WeightedHardySpace& h, std::size_t k) {
  const auto m = static_cast<Index>(h.truncation() + 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Index n = 0; n + static_cast<Index>(k) < m; ++n)
    t(n + static_cast<Index>(k), n) = std::sqrt(h[static_cast<std::size_t>(n)] / h[static_cast<std::size_t>(n) + k]);
  return t;
}

// Truncation oracle: column norm over the domain that does not overflow, row norm over all rows.
std::pair<double, double> oracle(const WeightedHardySpace& h, const MonomialTuple& tuple) {
  const auto m = static_cast<Index>(h.truncation() + 1);
  const Index safe = m - static_cast<Index>(tuple.exponents.back());
  Eigen::MatrixXd col(m * static_cast<Index>(tuple.exponents.size()), safe);
  Eigen::MatrixXd row(m, m * static_cast<Index>(tuple.exponents.size()));
  for (std::size_t j = 0; j < tuple.exponents.size(); ++j) {
    const Eigen::MatrixXd t = shift_matrix(h, tuple.exponents[j]);
    col.middleRows(static_cast<Index>(j) * m, m) = t.leftCols(safe);
    row.middleCols(static_cast<Index>(j) * m, m) = t;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> sc(col), sr(row);
  return {std::pow(sc.singularValues()(0), 2), std::pow(sr.singularValues()(0), 2)};
}

}  // namespace

TEST(DiagonalSpaces, AlphaExampleDefinition) {
  const auto h = alpha_example(4.0, 50);
  EXPECT_EQ(h[0], 1.0);
  EXPECT_EQ(h[1], 1.0);
  EXPECT_EQ(h[2], 0.25);
  EXPECT_EQ(h[3], 1.0);
  EXPECT_EQ(h.truncation(), 50u);
  EXPECT_THROW(alpha_example(1.0, 50), InputError);
  EXPECT_THROW(alpha_example(2.0, 5), InputError);
  EXPECT_THROW(WeightedHardySpace(std::vector<double>(10, -1.0)), InputError);
}

TEST(DiagonalSpaces, AlphaNorms) {
  const auto h = alpha_example(4.0, 50);
  const MonomialTuple t{{1, 2}};
  EXPECT_NEAR(column_norm_sq(h, t).value, 5.0, 1e-12);
  EXPECT_NEAR(row_norm_sq(h, t).value, 8.0, 1e-12);
  EXPECT_FALSE(column_norm_sq(h, t).at_edge);
  EXPECT_FALSE(row_norm_sq(h, t).at_edge);
}

TEST(DiagonalSpaces, HardyNorms) {
  const auto h = hardy_weights(50);
  EXPECT_NEAR(column_norm_sq(h, MonomialTuple{{1, 2}}).value, 2.0, 1e-12);
  EXPECT_NEAR(row_norm_sq(h, MonomialTuple{{1, 2}}).value, 2.0, 1e-12);
  EXPECT_NEAR(column_norm_sq(h, MonomialTuple{{1}}).value, 1.0, 1e-12);
  EXPECT_NEAR(row_norm_sq(h, MonomialTuple{{1}}).value, 1.0, 1e-12);
}

TEST(DiagonalSpaces, ClosedFormsMatchTruncationOracle) {
  for (double alpha : {2.0, 4.0, 10.0}) {
    const auto h = alpha_example(alpha, 50);
    const MonomialTuple t{{1, 2}};
    const auto [c, r] = oracle(h, t);
    EXPECT_NEAR(column_norm_sq(h, t).value, c, 1e-12 * c);
    EXPECT_NEAR(row_norm_sq(h, t).value, r, 1e-12 * r);
  }
  const auto [c, r] = oracle(hardy_weights(50), MonomialTuple{{1, 2}});
  EXPECT_NEAR(c, 2.0, 1e-12);
  EXPECT_NEAR(r, 2.0, 1e-12);
}

TEST(DiagonalSpaces, TupleValidation) {
  const auto h = hardy_weights(10);
  EXPECT_THROW(column_norm_sq(h, MonomialTuple{{2, 1}}), InputError);
  EXPECT_THROW(column_norm_sq(h, MonomialTuple{{0}}), InputError);
  EXPECT_THROW(row_norm_sq(h, MonomialTuple{{10}}), InputError);
  EXPECT_THROW(row_norm_sq(h, MonomialTuple{{}}), InputError);
}

TEST(DiagonalSpaces, RatioTendsToTwo) {
  double previous = 1.0;
  for (double alpha : {2.0, 4.0, 10.0, 100.0}) {
    const auto h = alpha_example(alpha, 50);
    const MonomialTuple t{{1, 2}};
    const double ratio = row_norm_sq(h, t).value / column_norm_sq(h, t).value;
    EXPECT_NEAR(ratio, 2.0 * alpha / (1.0 + alpha), 1e-12);
    EXPECT_GT(ratio, previous);
    previous = ratio;
  }
  EXPECT_GT(previous, 1.98);
}

TEST(DiagonalSpaces, InverseSeries) {
  const auto hardy = inverse_series_coeffs(hardy_weights(20), 20);
  EXPECT_EQ(hardy[0], 1.0);
  for (std::size_t n = 1; n < hardy.size(); ++n) EXPECT_EQ(hardy[n], 0.0);
  const auto alpha = inverse_series_coeffs(alpha_example(4.0, 20), 20);
  EXPECT_NEAR(alpha[1], -0.75, 1e-12);
}

TEST(DiagonalSpaces, InverseSeriesReconstructsOne) {
  Rng rng(1);
  std::vector<double> a(31);
  a[0] = 1.0;
  for (std::size_t n = 1; n < a.size(); ++n) a[n] = 0.1 + rng.uniform();
  const WeightedHardySpace h(a);
  const auto b = inverse_series_coeffs(h, 30);
  EXPECT_EQ(b[0], a[1]);
  EXPECT_NEAR(b[1], a[2] - a[1] * a[1], 1e-12);
  // (sum a_n t^n)(1 - sum b_n t^n) = 1 coefficientwise.
  for (std::size_t n = 1; n <= 30; ++n) {
    double c = a[n];
    for (std::size_t k = 1; k <= n; ++k) c -= a[n - k] * b[k - 1];
    EXPECT_NEAR(c, 0.0, 1e-12 * std::max(1.0, std::abs(b[n - 1]))) << "n = " << n;
  }
}

TEST(DiagonalSpaces, CompletePickVerdicts) {
  EXPECT_TRUE(is_complete_pick(hardy_weights(50), 50, 1e-12).verdict);
  const PickVerdict alpha = is_complete_pick(alpha_example(4.0, 50), 50, 1e-12);
  EXPECT_FALSE(alpha.verdict);
  EXPECT_EQ(alpha.first_violation, 2u);
  EXPECT_NEAR(alpha.value, -0.75, 1e-12);
  EXPECT_TRUE(is_complete_pick(dirichlet_weights(50), 50, 1e-12).verdict);
  EXPECT_THROW(is_complete_pick(hardy_weights(10), 10, -1.0), InputError);
}

TEST(DiagonalSpaces, CompletePickFamiliesSatisfyColumnRow) {
  Rng rng(2);
  for (const auto& h : {hardy_weights(50), dirichlet_weights(50)}) {
    ASSERT_TRUE(is_complete_pick(h, 50, 1e-12).verdict);
    for (int t = 0; t < 20; ++t) {
      MonomialTuple tuple;
      for (std::size_t k = 1; k <= 10; ++k)
        if (rng.uniform() < 0.4) tuple.exponents.push_back(k);
      if (tuple.exponents.empty()) tuple.exponents.push_back(1);
      EXPECT_LE(row_norm_sq(h, tuple).value, column_norm_sq(h, tuple).value + 1e-9);
    }
  }
}
