#include "homsol/derivations.hpp"
#include "homsol/git_strata.hpp"
#include "homsol/metric_decomposition.hpp"
#include "homsol/soliton.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace homsol;

// The standard filiform algebra: [e0, ei] = e_{i+1}.
AlgebraTensor filiform(int n) {
  std::vector<StructureConstant> entries;
  for (int i = 1; i + 1 < n; ++i) entries.push_back({0, i, i + 1, 1.0});
  return AlgebraTensor(n, entries);
}

AlgebraTensor random_basis(const AlgebraTensor& mu, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int n = mu.dim();
  Matrix h = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) += 0.3 * normal(rng);
  return mu.transformed(h);
}

void BM_MinNormPoint(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  std::vector<Vector> points(count, Vector(dim));
  for (auto& p : points)
    for (int i = 0; i < dim; ++i) p(i) = 1.0 + normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_point(points));
}
BENCHMARK(BM_MinNormPoint)->Args({8, 4})->Args({32, 8})->Args({128, 16})->Args({512, 32});

void BM_DerivationAlgebra(benchmark::State& state) {
  const AlgebraTensor mu = random_basis(filiform(static_cast<int>(state.range(0))), 5);
  for (auto _ : state) benchmark::DoNotOptimize(derivation_algebra(mu));
}
BENCHMARK(BM_DerivationAlgebra)->DenseRange(4, 10, 2);

void BM_RicciOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MetricDecomposition d(random_basis(filiform(n), 9), BlockDims{0, 0, n});
  for (auto _ : state) benchmark::DoNotOptimize(ricci_operator(d));
}
BENCHMARK(BM_RicciOperator)->DenseRange(4, 16, 4);

void BM_BetaMu(benchmark::State& state) {
  const AlgebraTensor mu = filiform(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(beta_mu(mu));
}
BENCHMARK(BM_BetaMu)->DenseRange(4, 10, 2);

void BM_NilsolitonFit(benchmark::State& state) {
  const AlgebraTensor mu = filiform(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nilsoliton_fit(mu));
}
BENCHMARK(BM_NilsolitonFit)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
