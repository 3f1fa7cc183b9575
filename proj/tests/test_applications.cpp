#include <gtest/gtest.h>

#include <cmath>

#include "crlab/applications.hpp"
#include "crlab/random.hpp"

using namespace crlab;

namespace {

FiniteKernelSpace two_points(Complex w) {
  return drury_arveson_space(1, {BallPoint::origin(1), BallPoint{w}});
}

// Smallest norm of a multiplier with values (1, 0) at the two points, by bisection.
double separation_oracle(const FiniteKernelSpace& space, std::size_t i, std::size_t j) {
  const std::vector<std::size_t> idx{i, j};
  const auto pair = restrict(space, idx);
  const auto values = MultiplierTable(1, 1, {ComplexMatrix::Ones(1, 1), ComplexMatrix::Zero(1, 1)});
  return 1.0 / multiplier_norm(pair, values, NormOptions{1e-12, 1e-14, 400});
}

MultiplierTable basis_column(std::size_t n) {
  std::vector<ComplexMatrix> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(ComplexVector::Unit(static_cast<Index>(n), static_cast<Index>(i)));
  return MultiplierTable(static_cast<Index>(n), 1, std::move(v));
}

}  // namespace

TEST(Carleson, SinglePointAndTwoPointFormula) {
  EXPECT_NEAR(carleson_constant(drury_arveson_space(2, {BallPoint::origin(2)})), 1.0, 1e-15);
  const Complex w(0.3, 0.4);
  EXPECT_NEAR(carleson_constant(two_points(w)), 1.0 + std::sqrt(1.0 - std::norm(w)), 1e-12);
}

TEST(Carleson, EqualsNormOfNormalizedGram) {
  Rng rng(1);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 7, 0.9));
  const ComplexMatrix& k = space.gram().matrix();
  const Eigen::VectorXd s = k.diagonal().real().cwiseSqrt().cwiseInverse();
  EXPECT_NEAR(carleson_constant(space), operator_norm(s.asDiagonal() * k * s.asDiagonal()), 1e-10);
}

TEST(WeakSeparation, TwoPointClosedForm) {
  const Complex w(-0.25, 0.5);
  const SeparationReport r = weak_separation_constant(two_points(w));
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_NEAR(r.minimum, std::abs(w), 1e-12);
  EXPECT_NEAR(r.minimum, separation_oracle(two_points(w), 0, 1), 1e-8);
  EXPECT_THROW(weak_separation_constant(drury_arveson_space(1, {BallPoint::origin(1)})), InputError);
}

TEST(WeakSeparation, MatchesBisectionOracle) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + t % 3;
    const auto space = drury_arveson_space(d, rng.ball_points(d, 3, 0.9));
    const SeparationReport r = weak_separation_constant(space);
    for (const auto& p : r.pairs) EXPECT_NEAR(p.epsilon, separation_oracle(space, p.i, p.j), 1e-8);
  }
}

TEST(Interpolation, ConstantAndIndicatorSequences) {
  Rng rng(3);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 4, 0.9));
  const auto phi = basis_column(4);
  const auto ones = interpolation_operator(space, phi, ComplexVector::Ones(4));
  for (const auto& v : ones.values()) EXPECT_EQ(v(0, 0), Complex(1.0));
  const auto e2 = interpolation_operator(space, phi, ComplexVector::Unit(4, 2));
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(e2[n](0, 0), Complex(n == 2 ? 1.0 : 0.0));
}

TEST(Interpolation, ExactnessAndNormBound) {
  Rng rng(4);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 5, 0.9));
  const auto phi = basis_column(5);
  const double bound = multiplier_norm(space, phi) * multiplier_norm(space, transpose(phi));
  for (int t = 0; t < 10; ++t) {
    const ComplexVector w = rng.complex_normal(5, 1);
    const auto tw = interpolation_operator(space, phi, w);
    for (Index n = 0; n < 5; ++n) EXPECT_LT(std::abs(tw[static_cast<std::size_t>(n)](0, 0) - w(n)), 1e-12);
    EXPECT_LE(multiplier_norm(space, tw), bound * w.cwiseAbs().maxCoeff() + 1e-7);
  }
}

TEST(Interpolation, RejectsNonBasisColumn) {
  Rng rng(5);
  const auto space = drury_arveson_space(1, rng.ball_points(1, 3, 0.9));
  EXPECT_THROW(interpolation_operator(space, basis_column(3).scaled(0.5), ComplexVector::Ones(3)), InputError);
}

TEST(JmCombination, TrivialCases) {
  Rng rng(6);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 4, 0.9));
  const auto b = random_contractive_column(space, 1, 7, 0.8);
  const auto zero = MultiplierTable::zeros(4, 1, 1);
  EXPECT_NEAR(jm_combination(space, b, zero, 1), multiplier_norm(space, b), 1e-12);
  const auto a = random_contractive_column(space, 1, 8, 1.0);
  EXPECT_LE(jm_combination(space, zero, a, -1), 0.5 + 1e-7);
}

TEST(JmCombination, RandomContractiveColumns) {
  Rng rng(9);
  for (int t = 0; t < 15; ++t) {
    const Index d = 1 + t % 3;
    const auto space = drury_arveson_space(d, rng.ball_points(d, 4, 0.9));
    const auto col = random_contractive_column(space, 2, rng.engine()(), 1.0);
    std::vector<ComplexMatrix> bv, av;
    for (const auto& v : col.values()) {
      bv.push_back(v.topRows(1));
      av.push_back(v.bottomRows(1));
    }
    const MultiplierTable b(1, 1, bv), a(1, 1, av);
    EXPECT_LE(jm_combination(space, b, a, 1), 1.0 + 1e-7);
    EXPECT_LE(jm_combination(space, b, a, -1), 1.0 + 1e-7);
  }
}

TEST(JmCombination, HypothesisFailure) {
  const auto space = two_points(Complex(0.5, 0.0));
  const auto one = MultiplierTable::constant(2, ComplexMatrix::Ones(1, 1));
  EXPECT_THROW(jm_combination(space, one, one, 1), DomainError);
}

TEST(ExtremeWitness, ZeroFunction) {
  const auto space = two_points(Complex(0.5, 0.0));
  const auto w = extreme_witness(space, MultiplierTable::zeros(2, 1, 1));
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->amplitude, 1.0, 1e-9);
  EXPECT_NEAR(w->norm_plus, 0.5, 1e-9);
  EXPECT_NEAR(w->norm_minus, 0.5, 1e-9);
}

TEST(ExtremeWitness, StrictlyPositivePickMatrix) {
  Rng rng(10);
  const auto space = drury_arveson_space(2, rng.ball_points(2, 4, 0.9));
  const auto b = random_contractive_column(space, 1, 11, 0.9);
  const auto w = extreme_witness(space, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(w->amplitude, 1e-6);
  // Independent re-verification of every claimed norm.
  std::vector<ComplexMatrix> stacked;
  for (std::size_t i = 0; i < 4; ++i) {
    ComplexMatrix m(2, 1);
    m << b[i](0, 0), w->a[i](0, 0);
    stacked.push_back(m);
  }
  EXPECT_LE(multiplier_norm(space, MultiplierTable(2, 1, stacked)), 1.0 + 1e-8);
  EXPECT_NEAR(multiplier_norm(space, w->b_plus), w->norm_plus, 1e-9);
  EXPECT_NEAR(multiplier_norm(space, w->b_minus), w->norm_minus, 1e-9);
  EXPECT_LE(w->norm_plus, 1.0 + 1e-7);
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_LT(std::abs(w->b_plus[i](0, 0) - b[i](0, 0) - 0.5 * w->a[i](0, 0) * w->a[i](0, 0)), 1e-15);
}

TEST(ExtremeWitness, CoordinateOnTwoPoints) {
  const auto space = two_points(Complex(0.5, 0.0));
  const auto w = extreme_witness(space, transpose(coordinate_row(space)));
  if (w) {
    EXPECT_LE(w->norm_plus, 1.0 + 1e-7);
    EXPECT_LE(w->norm_minus, 1.0 + 1e-7);
  }
}
