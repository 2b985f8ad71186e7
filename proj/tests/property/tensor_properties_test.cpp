#include "generators.hpp"
#include "homsol/derivations.hpp"
#include "homsol/git_strata.hpp"
#include "homsol/soliton.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace homsol {
namespace {

TEST(TensorProperty, PiIsARepresentation) {
  gen::Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 5);
    const AlgebraTensor mu = gen::random_skew_tensor(rng, n, 0.6);
    const Matrix a = gen::random_matrix(rng, n, n), b = gen::random_matrix(rng, n, n);
    const AlgebraTensor lhs = pi_action(commutator(a, b), mu);
    const AlgebraTensor rhs = pi_action(a, pi_action(b, mu)) - pi_action(b, pi_action(a, mu));
    EXPECT_LT(std::sqrt(tensor_norm_sq(lhs - rhs)), 1e-10 * (1.0 + std::sqrt(tensor_norm_sq(lhs))));
  }
}

TEST(TensorProperty, InnerProductIsOrthogonallyInvariant) {
  gen::Rng rng(102);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 5);
    const AlgebraTensor mu = gen::random_skew_tensor(rng, n, 0.5);
    const AlgebraTensor la = gen::random_skew_tensor(rng, n, 0.5);
    const Matrix k = gen::random_orthogonal(rng, n);
    EXPECT_NEAR(tensor_inner(mu.transformed(k), la.transformed(k)), tensor_inner(mu, la), 1e-10);
  }
}

TEST(TensorProperty, MomentMapIsEquivariant) {
  gen::Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const AlgebraTensor mu = gen::random_nilpotent(rng);
    const Matrix k = gen::random_orthogonal(rng, mu.dim());
    const Matrix lhs = moment_map(mu.transformed(k));
    const Matrix rhs = k * moment_map(mu) * k.transpose();
    EXPECT_LT((lhs - rhs).norm(), 1e-10);
    EXPECT_NEAR(moment_map(mu).trace(), -1.0, 1e-12);
  }
}

TEST(TensorProperty, JacobiIsInvariantUnderChangeOfBasis) {
  gen::Rng rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraTensor mu = gen::random_nilpotent(rng);
    EXPECT_LT(jacobi_residual(mu), 1e-10 * (1.0 + tensor_norm_sq(mu)));
    EXPECT_TRUE(nilpotency_step(mu).has_value());
  }
}

TEST(TensorProperty, DerivationDimensionMatchesLuOracle) {
  gen::Rng rng(105);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraTensor mu = gen::random_nilpotent(rng);
    const auto basis = derivation_algebra(mu);
    EXPECT_EQ(static_cast<int>(basis.size()), oracle::derivation_dimension(mu));
    for (const auto& d : basis) EXPECT_LT(derivation_residual(d, mu), 1e-9 * (1.0 + std::sqrt(tensor_norm_sq(mu))));
  }
}

TEST(TensorProperty, DerivationsFormALieAlgebra) {
  gen::Rng rng(106);
  for (int trial = 0; trial < 15; ++trial) {
    const AlgebraTensor mu = gen::random_nilpotent(rng);
    const auto basis = derivation_algebra(mu);
    const int a = rng.integer(0, static_cast<int>(basis.size()) - 1);
    const int b = rng.integer(0, static_cast<int>(basis.size()) - 1);
    EXPECT_LT(derivation_residual(commutator(basis[a], basis[b]), mu), 1e-8 * (1.0 + tensor_norm_sq(mu)));
  }
}

TEST(TensorProperty, NormalDerivationsOfNilsolitonsHaveDerivationTransposes) {
  gen::Rng rng(107);
  for (const auto& model : gen::nilpotent_models()) {
    if (!nilsoliton_fit(model.mu).detected()) continue;
    // A random orthogonal conjugate keeps the metric a nilsoliton.
    const Matrix k = gen::random_orthogonal(rng, model.mu.dim());
    const AlgebraTensor mu = model.mu.transformed(k);
    for (const auto& e : derivation_algebra(mu)) {
      if (commutator(e, e.transpose()).norm() > 1e-9) continue;
      EXPECT_LT(derivation_residual(e.transpose(), mu), 1e-9) << model.name;
    }
  }
}

TEST(TensorProperty, MinNormPointMatchesCaratheodory) {
  gen::Rng rng(108);
  for (int trial = 0; trial < 150; ++trial) {
    const int dim = rng.integer(1, 6);
    const int count = rng.integer(1, 7);
    const auto pts = gen::random_points(rng, count, dim);
    const auto r = min_norm_point(pts);
    EXPECT_LT((r.point - oracle::caratheodory_min_norm(pts)).norm(), 1e-9);
    EXPECT_NEAR(r.coefficients.sum(), 1.0, 1e-12);
    EXPECT_GE(r.coefficients.minCoeff(), -1e-14);
  }
}

TEST(TensorProperty, BetaLiesInTheHullWithTraceMinusOne) {
  gen::Rng rng(109);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraTensor mu = gen::random_nilpotent(rng);
    const auto s = beta_mu(mu);
    EXPECT_NEAR(s.beta.sum(), -1.0, 1e-10);
    EXPECT_GE(s.min_pairing, s.beta_norm_sq - 1e-9);
    const auto mnp = min_norm_point(s.weights);
    Vector comb = Vector::Zero(mu.dim());
    for (std::size_t i = 0; i < s.weights.size(); ++i) comb += mnp.coefficients(i) * s.weights[i];
    EXPECT_LT((comb - s.beta).norm(), 1e-10);
  }
}

}  // namespace
}  // namespace homsol
