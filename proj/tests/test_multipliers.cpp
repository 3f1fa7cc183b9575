#include <gtest/gtest.h>

#include <cmath>

#include "crlab/multipliers.hpp"
#include "crlab/random.hpp"

using namespace crlab;

namespace {

// Independent norm oracle: ||Phi||^2 is the top eigenvalue of the pencil
// ([K_src(i,j) Phi_i Phi_j^*], K_dst (x) I), computed by whitening with K_dst^{-1/2}.
double norm_oracle(const FiniteKernelSpace& src, const FiniteKernelSpace& dst, const MultiplierTable& phi) {
  const Index n = static_cast<Index>(src.size());
  const Index q = phi.q();
  ComplexMatrix a(n * q, n * q), b = ComplexMatrix::Zero(n * q, n * q);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      a.block(i * q, j * q, q, q) =
          src.gram()(i, j) * phi[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(j)].adjoint();
      b.block(i * q, j * q, q, q) = dst.gram()(i, j) * ComplexMatrix::Identity(q, q);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> es(a, b);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

FiniteKernelSpace random_space(std::uint64_t seed, Index d, std::size_t n) {
  Rng rng(seed);
  return drury_arveson_space(d, rng.ball_points(d, n, 0.9));
}

MultiplierTable gaussian_table(std::uint64_t seed, std::size_t n, Index q, Index p) {
  Rng rng(seed);
  std::vector<ComplexMatrix> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.complex_normal(q, p));
  return MultiplierTable(q, p, std::move(v));
}

}  // namespace

TEST(Multipliers, TableValidation) {
  EXPECT_THROW(MultiplierTable(2, 1, {ComplexMatrix::Zero(1, 1)}), InputError);
  ComplexMatrix bad(1, 1);
  bad(0, 0) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(MultiplierTable(1, 1, {bad}), InputError);
}

TEST(Multipliers, ParallelAssemblyMatchesSerialExactly) {
  const auto space = random_space(1, 3, 60);
  const auto phi = gaussian_table(2, 60, 3, 2);
  const auto par = pick_matrix(space, space, phi, 1.3);
  const auto ser = pick_matrix_serial(space, space, phi, 1.3);
  EXPECT_EQ(par.blocks.matrix(), ser.blocks.matrix());
}

TEST(Multipliers, NormAgreesWithGeneralizedEigenOracle) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Index d = 1 + static_cast<Index>(s % 3);
    const auto space = random_space(100 + s, d, 2 + s % 5);
    const auto phi = gaussian_table(200 + s, space.size(), 1 + static_cast<Index>(s % 3), 1 + static_cast<Index>(s % 2));
    // Gaussian values on clustered points give norms in the hundreds; compare relatively.
    const double oracle = norm_oracle(space, space, phi);
    EXPECT_NEAR(multiplier_norm(space, phi), oracle, 1e-8 * std::max(1.0, oracle)) << "seed " << s;
  }
}

TEST(Multipliers, NormBetweenDifferentKernelsAgreesWithOracle) {
  Rng rng(3);
  const auto pts = rng.ball_points(1, 4, 0.9);
  const auto s = drury_arveson_space(1, pts);
  const auto k = power_kernel_space(1, 2.0, pts);
  const auto phi = gaussian_table(4, 4, 2, 1);
  EXPECT_NEAR(multiplier_norm(s, k, phi), norm_oracle(s, k, phi), 1e-8);
}

TEST(Multipliers, ConstantTableHasMatrixNorm) {
  const auto space = random_space(5, 2, 4);
  Rng rng(6);
  const ComplexMatrix c = rng.complex_normal(3, 2);
  EXPECT_NEAR(multiplier_norm(space, MultiplierTable::constant(4, c)), operator_norm(c), 1e-12);
}

TEST(Multipliers, CoordinateFunctionsAreContractive) {
  Rng rng(7);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 6, 0.9, true));
  // The coordinate row is a row contraction; on two or more points its norm is exactly 1.
  EXPECT_NEAR(multiplier_norm(space, coordinate_row(space)), 1.0, 1e-9);
  // As a column it is bounded by sqrt(d) and, by the column-row property, at least 1.
  const double col = multiplier_norm(space, transpose(coordinate_row(space)));
  EXPECT_LE(col, std::sqrt(2.0) + 1e-9);
  EXPECT_GE(col, 1.0 - 1e-9);
  EXPECT_NEAR(multiplier_norm(space, coordinate_block_row(space, 3)), 1.0, 1e-9);
}

TEST(Multipliers, ReshapeIsColumnMajor) {
  ComplexMatrix col(6, 1);
  col << 1, 2, 3, 4, 5, 6;
  const auto m = reshape_column_to_matrix(MultiplierTable(6, 1, {col}), 2, 3);
  EXPECT_EQ(m[0](1, 0), Complex(2.0));
  EXPECT_EQ(m[0](0, 1), Complex(3.0));
  EXPECT_EQ(vectorize(m)[0], col);
  EXPECT_THROW(reshape_column_to_matrix(MultiplierTable(6, 1, {col}), 4, 2), InputError);
}

TEST(Multipliers, RandomContractiveTableHasRequestedNorm) {
  const auto space = random_space(8, 2, 5);
  const auto phi = random_contractive_column(space, 3, 9, 0.7);
  EXPECT_NEAR(multiplier_norm(space, phi), 0.7, 1e-9);
}

TEST(Multipliers, ContractivityTest) {
  const auto space = random_space(10, 2, 4);
  const auto phi = random_contractive_column(space, 2, 11, 0.9);
  EXPECT_TRUE(is_contractive_at(space, space, phi, 1.0));
  EXPECT_FALSE(is_contractive_at(space, space, phi, 0.8));
}

TEST(Multipliers, JmLowerBoundNeverExceedsNorm) {
  const auto space = random_space(12, 2, 4);
  const auto psi = gaussian_table(13, 4, 1, 3);
  const double lb = jm_lower_bound(space, psi, 20, 14);
  EXPECT_LE(lb, multiplier_norm(space, psi) + 1e-8);
  EXPECT_GT(lb, 0.0);
}
