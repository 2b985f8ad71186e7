#include "fixtures.hpp"
#include "homsol/derivations.hpp"
#include "homsol/metric_decomposition.hpp"

#include <gtest/gtest.h>

namespace homsol {
namespace {

using fixture::decomposition;
using fixture::diag;
using fixture::dist;

bool has_code(const std::vector<Violation>& v, const std::string& code) {
  for (const auto& x : v)
    if (x.code == code) return true;
  return false;
}

TEST(Validation, AcceptsCatalogAlgebras) {
  for (const char* name : {"heis3", "fil4", "solv12", "so3", "sl2r_so2", "heis3_ip", "cn7"})
    EXPECT_NO_THROW(decomposition(name)) << name;
}

TEST(Validation, ReportsEveryViolation) {
  // [h, n] leaves n and the ip is indefinite.
  const AlgebraTensor br(3, {{0, 1, 0, 1.0}});
  Matrix ip = Matrix::Identity(3, 3);
  ip(2, 2) = -1.0;
  const auto v = MetricDecomposition::violations(br, {0, 1, 2}, ip);
  EXPECT_TRUE(has_code(v, "n-not-ideal"));
  EXPECT_TRUE(has_code(v, "ip-not-pd"));
  try {
    MetricDecomposition d(br, {0, 1, 2}, ip);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.violations().size(), 2u);
  }
}

TEST(Validation, RejectsStructuralFailures) {
  EXPECT_TRUE(has_code(MetricDecomposition::violations(AlgebraTensor(3), {0, 1, 1}, {}), "dim-mismatch"));
  Matrix ip = Matrix::Identity(3, 3);
  ip(0, 1) = ip(1, 0) = 0.3;
  EXPECT_TRUE(has_code(MetricDecomposition::violations(AlgebraTensor(3), {0, 1, 2}, ip), "h-n-not-orthogonal"));
  const AlgebraTensor so3(3, {{0, 1, 2, 1.0}, {0, 2, 1, -1.0}, {1, 2, 0, 1.0}});
  EXPECT_TRUE(has_code(MetricDecomposition::violations(so3, {0, 0, 3}, {}), "n-not-nilpotent"));
  const AlgebraTensor bad(3, {{0, 1, 2, 1.0}, {1, 2, 1, 1.0}});
  EXPECT_TRUE(has_code(MetricDecomposition::violations(bad, {0, 3, 0}, {}), "jacobi"));
  // ad of the k vector is symmetric rather than skew on p.
  const AlgebraTensor sym_k(3, {{0, 1, 1, 1.0}, {0, 2, 2, 1.0}});
  EXPECT_TRUE(has_code(MetricDecomposition::violations(sym_k, {1, 2, 0}, {}), "k-not-skew"));
}

TEST(MetricDecomposition, WorkingFrameIsOrthonormal) {
  const auto d = decomposition("heis3_ip");
  const Matrix f = d.frame();
  EXPECT_LT(dist(f.transpose() * d.ip() * f, Matrix::Identity(3, 3)), 1e-12);
  const Matrix a = diag({1, 2, 3});
  EXPECT_LT(dist(d.to_user(d.from_user(a)), a), 1e-12);
}

TEST(Killing, Examples) {
  EXPECT_LT(killing_operator(decomposition("abelian3")).gram.norm(), 1e-14);
  EXPECT_LT(dist(killing_operator(decomposition("so3")).gram, -2.0 * Matrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(killing_operator(decomposition("heis3")).gram.norm(), 1e-14);
  EXPECT_TRUE(killing_operator(decomposition("so3")).nondegenerate);
}

TEST(MeanCurvature, Examples) {
  EXPECT_LT(mean_curvature(decomposition("heis3")).h.norm(), 1e-14);
  EXPECT_LT(mean_curvature(decomposition("so3")).h.norm(), 1e-14);
  for (int n = 2; n <= 6; ++n) {
    const auto mc = mean_curvature(decomposition("hyp" + std::to_string(n)));
    EXPECT_NEAR(mc.h(0), n - 1.0, 1e-12);
    EXPECT_LT(mc.h.tail(n - 1).norm(), 1e-14);
  }
  const auto mc = mean_curvature(decomposition("solv12"));
  EXPECT_NEAR(mc.h(0), 3.0, 1e-12);
  EXPECT_LT(mc.n_component + mc.trace_eta_residual, 1e-12);
}

TEST(Ricci, Examples) {
  EXPECT_LT(dist(ricci_operator(decomposition("heis3")).matrix, diag({-0.5, -0.5, 0.5})), 1e-12);
  for (int n = 2; n <= 6; ++n)
    EXPECT_LT(dist(ricci_operator(decomposition("hyp" + std::to_string(n))).matrix,
                   -(n - 1.0) * Matrix::Identity(n, n)),
              1e-12)
        << n;
  EXPECT_LT(dist(ricci_operator(decomposition("solv12")).matrix, diag({-5, -3, -6})), 1e-12);
  EXPECT_LT(dist(ricci_operator(decomposition("so3")).matrix, 0.5 * Matrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(dist(ricci_operator(decomposition("sl2r_so2")).matrix, -Matrix::Identity(2, 2)), 1e-12);
}

TEST(Ricci, SolvTermsMatchHandValues) {
  const auto t = ricci_terms(decomposition("solv12"));
  EXPECT_NEAR(t.m(0, 0), -2.5, 1e-12);
  EXPECT_NEAR(t.b_p(0, 0), 5.0, 1e-12);
  EXPECT_LT(dist(t.sym_ad_h, diag({0, 3, 6})), 1e-12);
}

TEST(Ricci, UserBasisOfNonOrthonormalMetric) {
  // heis3 with ip [[2,1,0],[1,2,0],[0,0,1]]: Ric is similar to the orthonormal
  // one scaled by det of the (e1, e2) Gram block, which is 3.
  const auto d = decomposition("heis3_ip");
  const Matrix ric = d.to_user(ricci_operator(d).matrix);
  Eigen::EigenSolver<Matrix> es(ric);
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(ev[1], -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(ev[2], 1.0 / 6.0, 1e-12);
}

TEST(BlockDecompose, Heis3IsOnlyMu) {
  const auto b = block_decompose(decomposition("heis3"));
  EXPECT_FALSE(b.mu.is_zero());
  for (const auto* t : {&b.lambda0, &b.lambda1, &b.eta, &b.nu0, &b.nu1, &b.nu2, &b.lambda2})
    EXPECT_TRUE(t->is_zero());
}

TEST(BlockDecompose, SolvIsOnlyEta) {
  const auto d = decomposition("solv12");
  const auto b = block_decompose(d);
  EXPECT_TRUE(b.mu.is_zero() && b.lambda0.is_zero() && b.lambda1.is_zero());
  EXPECT_NEAR(b.eta(0, 1, 1), 1.0, 1e-12);
  EXPECT_NEAR(b.eta(0, 2, 2), 2.0, 1e-12);
  EXPECT_LT(tensor_norm_sq(b.reassembled() - d.working()), 1e-24);
}

TEST(BlockDecompose, HyperbolicEtaIsIdentity) {
  const auto b = block_decompose(decomposition("hyp4"));
  EXPECT_TRUE(b.lambda0.is_zero() && b.lambda1.is_zero() && b.mu.is_zero());
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(b.eta(0, i, i), 1.0, 1e-12);
}

TEST(BlockDecompose, SplitsReductivePart) {
  const auto d = decomposition("sl2r_so2");
  const auto b = block_decompose(d);
  EXPECT_FALSE(b.lambda2.is_zero());
  EXPECT_LT(tensor_norm_sq(b.reassembled() - d.working()), 1e-24);
}

TEST(MmBlocks, Examples) {
  const auto h = decomposition("heis3");
  EXPECT_LT(dist(mm_blocks(h).matrix, mm_operator(h.working())), 1e-12);
  const auto s = decomposition("solv12");
  const Matrix m = mm_blocks(s).matrix;
  EXPECT_NEAR(m(0, 0), -2.5, 1e-12);
  EXPECT_LT(m.bottomRightCorner(2, 2).norm(), 1e-12);
  EXPECT_LT(dist(m, ricci_terms(s).m), 1e-12);
}

TEST(MmBlocks, RefusesLambda1) {
  // h = span(e0, e1) with [e0, e1] = e2 in n.
  const MetricDecomposition d(AlgebraTensor(3, {{0, 1, 2, 1.0}}), {0, 2, 1});
  EXPECT_THROW(mm_blocks(d), PreconditionError);
}

TEST(LemmaDpp, ZeroDerivation) {
  const auto d = decomposition("solv12");
  const auto r = check_lemma_Dpp(d, Matrix::Zero(3, 3));
  EXPECT_TRUE(r.p_invariant && r.n_invariant && r.trace_equal);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(LemmaDpp, NilsolitonDerivationOnHeisenberg) {
  const auto r = check_lemma_Dpp(decomposition("heis3"), diag({1, 1, 2}));
  EXPECT_NEAR(r.trace_p, 4.0, 1e-12);
  EXPECT_NEAR(r.trace_n, 4.0, 1e-12);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(LemmaDpp, InnerDerivations) {
  for (const char* name : {"solv12", "sl2r_so2", "fil4"}) {
    const auto d = decomposition(name);
    const int g = d.dims().g();
    for (int x = d.dims().k; x < g; ++x) {
      const Matrix ad = d.working().ad(x);
      // Keep only those X with [X, k] in k.
      if (d.dims().k > 0 && ad.block(d.dims().k, 0, d.dims().p(), d.dims().k).norm() > 1e-12) continue;
      const auto r = check_lemma_Dpp(d, ad);
      EXPECT_TRUE(all_pass(r.checks)) << name << " x=" << x;
    }
  }
}

TEST(LemmaDpp, RefusesNonDerivation) {
  EXPECT_THROW(check_lemma_Dpp(decomposition("heis3"), Matrix::Identity(3, 3)), PreconditionError);
}

}  // namespace
}  // namespace homsol
