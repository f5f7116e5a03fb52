#include <benchmark/benchmark.h>

#include "gols/ensembles.hpp"
#include "gols/solvers.hpp"

namespace {

gols::SparseProblem problem(gols::Index n, gols::Index m, gols::Index k) {
  return gols::make_problem({gols::MatrixKind::Gaussian, n, m, false},
                            {gols::SignalDist::GaussianUnit, m, k}, 0.0, 2024);
}

// Args: m, k, L
void BM_Gols(benchmark::State& state) {
  const auto p = problem(64, state.range(0), state.range(1));
  gols::SolverConfig cfg;
  cfg.k = state.range(1);
  cfg.L = state.range(2);
  for (auto _ : state) {
    auto r = gols::gols_run(p.a, p.y, cfg);
    benchmark::DoNotOptimize(r.residual_norm);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gols)
    ->ArgsProduct({{128, 256, 512, 1024}, {8}, {2}})
    ->Complexity(benchmark::oN)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Gols)->ArgsProduct({{128}, {4, 8, 16, 24}, {1, 2, 3}})->Unit(benchmark::kMicrosecond);

void BM_Omp(benchmark::State& state) {
  const auto p = problem(64, 128, state.range(0));
  for (auto _ : state) {
    auto r = gols::omp_run(p.a, p.y, state.range(0));
    benchmark::DoNotOptimize(r.residual_norm);
  }
}
BENCHMARK(BM_Omp)->Arg(4)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_TrackerAbsorb(benchmark::State& state) {
  const auto n = state.range(0);
  const auto a = gols::gen_matrix({gols::MatrixKind::Gaussian, n, n / 2, false}, 7);
  for (auto _ : state) {
    gols::ProjectionTracker t(n);
    for (gols::Index j = 0; j < a.cols(); ++j) t.absorb(a.col(j));
    benchmark::DoNotOptimize(t.matrix().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TrackerAbsorb)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_LeastSquares(benchmark::State& state) {
  const auto a = gols::gen_matrix({gols::MatrixKind::Gaussian, 64, state.range(0), false}, 8);
  const auto y = gols::gen_matrix({gols::MatrixKind::Gaussian, 64, 1, false}, 9).col(0).eval();
  for (auto _ : state) {
    auto x = gols::least_squares(a, y);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_LeastSquares)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
