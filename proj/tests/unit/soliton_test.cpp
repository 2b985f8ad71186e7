#include "fixtures.hpp"
#include "generators.hpp"
#include "homsol/constructions.hpp"
#include "homsol/derivations.hpp"
#include "homsol/soliton.hpp"

#include <gtest/gtest.h>

namespace homsol {
namespace {

using fixture::decomposition;
using fixture::diag;
using fixture::dist;

TEST(NilsolitonFit, Heis3) {
  const auto c = nilsoliton_fit(AlgebraTensor(3, {{0, 1, 2, 1.0}}));
  EXPECT_NEAR(c.c, -1.5, 1e-12);
  EXPECT_LT(dist(c.d1, diag({1, 1, 2})), 1e-10);
  EXPECT_LT(c.residual, 1e-10);
  EXPECT_TRUE(c.detected());
}

TEST(NilsolitonFit, Fil4) {
  const auto c = nilsoliton_fit(AlgebraTensor(4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}));
  EXPECT_NEAR(c.c, -1.5, 1e-12);
  EXPECT_LT(dist(c.d1, diag({0.5, 1, 1.5, 2})), 1e-10);
  EXPECT_LT(c.residual, 1e-10);
}

TEST(NilsolitonFit, Heis3PlusLine) {
  const auto c = nilsoliton_fit(AlgebraTensor(4, {{0, 1, 2, 1.0}}));
  EXPECT_NEAR(c.c, -1.5, 1e-12);
  EXPECT_LT(dist(c.d1, diag({1, 1, 2, 1.5})), 1e-10);
  EXPECT_LT(c.residual, 1e-10);
}

TEST(NilsolitonFit, AbelianUsesZeroConstant) {
  const auto c = nilsoliton_fit(AlgebraTensor(3));
  EXPECT_DOUBLE_EQ(c.c, 0.0);
  EXPECT_LT(c.d1.norm(), 1e-14);
  const auto fixed = nilsoliton_fit(AlgebraTensor(3), -1.0);
  EXPECT_DOUBLE_EQ(fixed.c, -1.0);
  EXPECT_LT(dist(fixed.d1, Matrix::Identity(3, 3)), 1e-12);
}

TEST(NilsolitonFit, FixedConstantRecoversTheSameDerivation) {
  const auto c = nilsoliton_fit(AlgebraTensor(3, {{0, 1, 2, 1.0}}), -1.5);
  EXPECT_LT(dist(c.d1, diag({1, 1, 2})), 1e-10);
}

TEST(NilsolitonFit, CharacteristicallyNilpotentFails) {
  const auto c = nilsoliton_fit(decomposition("cn7").n_bracket());
  EXPECT_GT(c.residual, 1e-3);
  EXPECT_FALSE(c.detected());
}

TEST(SolitonFit, Solv12) {
  const auto d = decomposition("solv12");
  const auto c = soliton_fit(d);
  EXPECT_NEAR(c.c, -5.0, 1e-12);
  EXPECT_TRUE(c.canonical);
  EXPECT_LT(dist(c.d1, 5.0 * Matrix::Identity(2, 2)), 1e-10);
  EXPECT_LT(dist(sym(c.d.bottomRightCorner(3, 3)), diag({0, 2, -1})), 1e-10);
  EXPECT_LT(c.residual, 1e-10);
  EXPECT_EQ(c.tag, SolitonTag::AlgebraicSoliton);
}

TEST(SolitonFit, HyperbolicIsEinstein) {
  for (int n = 2; n <= 6; ++n) {
    const auto c = soliton_fit(decomposition("hyp" + std::to_string(n)));
    EXPECT_NEAR(c.c, -(n - 1.0), 1e-12);
    EXPECT_EQ(c.tag, SolitonTag::Einstein);
    EXPECT_LT(sym(c.d).norm(), 1e-10);
  }
}

TEST(SolitonFit, CompactEinstein) {
  const auto c = soliton_fit(decomposition("so3"));
  EXPECT_NEAR(c.c, 0.5, 1e-12);
  EXPECT_EQ(c.tag, SolitonTag::Einstein);
  EXPECT_FALSE(c.expanding());
  EXPECT_TRUE(c.semisimple);
}

TEST(SolitonFit, ReductiveWithIsotropy) {
  const auto c = soliton_fit(decomposition("sl2r_so2"));
  EXPECT_NEAR(c.c, -1.0, 1e-12);
  EXPECT_EQ(c.tag, SolitonTag::Einstein);
  EXPECT_LT(c.d.topRows(1).norm() + c.d.leftCols(1).norm(), 1e-12);
}

TEST(SolitonFit, ResidualIsTheDocumentedNorm) {
  const auto d = decomposition("fil4");
  const auto c = soliton_fit(d);
  const Matrix ric = ricci_operator(d).matrix;
  const Matrix r = ric - c.c * Matrix::Identity(4, 4) - sym(c.d);
  EXPECT_NEAR(c.residual, r.norm(), 1e-12);
}

TEST(SolitonFit, FittedDerivationIsADerivation) {
  for (const char* name : {"solv12", "heis3", "fil4", "heis3_ip", "hyp3", "sl2r_so2"}) {
    const auto d = decomposition(name);
    const auto c = soliton_fit(d);
    EXPECT_LT(derivation_residual(c.d, d.working()), 1e-9) << name;
  }
}

TEST(Certify, NotDetectedForWrongConstant) {
  const auto d = decomposition("heis3");
  const auto c = certify(d, -1.0, diag({1, 1, 2}), diag({1, 1, 2}), false);
  EXPECT_FALSE(c.detected());
  EXPECT_GT(c.residual, 0.1);
}

TEST(MainTheorem, Solv12) {
  const auto d = decomposition("solv12");
  const auto r = main_theorem_battery(d, soliton_fit(d));
  EXPECT_TRUE(r.forward_applicable);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(r.holds[i]) << i;
  EXPECT_NEAR(r.c_h(0, 0), 5.0, 1e-12);
  EXPECT_LT(r.ric_u.norm(), 1e-12);
  EXPECT_LT(dist(r.d1, 5.0 * Matrix::Identity(2, 2)), 1e-10);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(MainTheorem, HeisenbergExtension) {
  const auto h = decomposition("heis3");
  const auto ext = einstein_extension_unimodular(h, soliton_fit(h));
  const auto r = main_theorem_battery(ext.decomposition, ext.certificate);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(r.holds[i]) << i;
  EXPECT_LT(dist(r.d1, diag({1, 1, 2})), 1e-10);
  EXPECT_LT(normality_defect(ext.decomposition).norm(), 1e-12);
}

TEST(MainTheorem, Lambda1FailsConditionOne) {
  // h = span(e0, e1), n = span(e2), [e0, e1] = e2.
  const MetricDecomposition d(AlgebraTensor(3, {{0, 1, 2, 1.0}}), {0, 2, 1});
  const auto r = main_theorem_battery(d, soliton_fit(d));
  EXPECT_FALSE(r.holds[0]);
  EXPECT_GT(r.residual[0], 1e-6);
}

TEST(Leo, HeisenbergExtension) {
  const auto h = decomposition("heis3");
  const auto ext = einstein_extension_unimodular(h, soliton_fit(h));
  const auto r = leo_consequences(ext.decomposition, ext.certificate);
  EXPECT_FALSE(r.abelian_branch);
  EXPECT_NEAR(r.t, 0.5, 1e-12);
  EXPECT_LT(dist(r.f.bottomRightCorner(3, 3), diag({1, 1, 2})), 1e-10);
  EXPECT_LT(r.f_residual, 1e-10);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(Leo, Solv12AbelianBranch) {
  const auto d = decomposition("solv12");
  const auto r = leo_consequences(d, soliton_fit(d));
  EXPECT_TRUE(r.abelian_branch);
  EXPECT_NEAR(r.t, 5.0, 1e-12);
  EXPECT_LT(dist(r.f, diag({0, 5, 5})), 1e-10);
  EXPECT_NEAR(-5.0 * r.f.trace() + (r.f * r.f).trace(), 0.0, 1e-10);
  EXPECT_LT(std::abs(r.trace_identity), 1e-10);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(Leo, RefusesNonExpanding) {
  const auto d = decomposition("so3");
  EXPECT_THROW(leo_consequences(d, soliton_fit(d)), PreconditionError);
}

TEST(Algsol, Solv12AllTrue) {
  const auto d = decomposition("solv12");
  const auto r = algsol_equivalences(d, soliton_fit(d));
  for (bool b : r.holds) EXPECT_TRUE(b);
  EXPECT_TRUE(r.agree);
}

TEST(Algsol, BuilderOutputsAllTrue) {
  gen::Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto res = build_semidirect(gen::random_construction(rng));
    const auto r = algsol_equivalences(res.decomposition, res.certificate);
    EXPECT_TRUE(r.agree);
    for (bool b : r.holds) EXPECT_TRUE(b);
  }
}

TEST(Algsol, NonNormalActionIsNotASoliton) {
  // R a acting on R^2 by a non-normal matrix: the fit fails, so the
  // equivalence battery refuses rather than reporting.
  const MetricDecomposition d(AlgebraTensor(3, {{0, 1, 1, 1.0}, {0, 2, 1, 1.0}, {0, 2, 2, 2.0}}), {0, 1, 2});
  const auto c = soliton_fit(d);
  EXPECT_FALSE(c.detected());
  EXPECT_THROW(algsol_equivalences(d, c), PreconditionError);
}

TEST(Extras, Heis3AndFil4) {
  for (const char* name : {"heis3", "fil4"}) {
    const auto d = decomposition(name);
    const auto r = extras_check(d, soliton_fit(d));
    EXPECT_FALSE(r.skipped) << name;
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass || c.informational) << name << " " << c.name;
  }
}

TEST(Extras, HeisenbergExtensionCoefficient) {
  const auto h = decomposition("heis3");
  const auto ext = einstein_extension_unimodular(h, soliton_fit(h));
  const auto r = extras_check(ext.decomposition, ext.certificate);
  EXPECT_FALSE(r.skipped);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass || c.informational) << c.name << " " << c.value;
}

TEST(Extras, SkipsAbelianNilradical) {
  const auto d = decomposition("solv12");
  EXPECT_TRUE(extras_check(d, soliton_fit(d)).skipped);
}

TEST(ChOperator, Solv12) {
  EXPECT_NEAR(c_h_operator(decomposition("solv12"))(0, 0), 5.0, 1e-12);
}

}  // namespace
}  // namespace homsol
