#include <benchmark/benchmark.h>

#include "bmolab/czo.hpp"
#include "bmolab/harness/corpus.hpp"
#include "bmolab/maximal.hpp"
#include "bmolab/norms.hpp"

namespace {

using namespace bmolab;

GridFunction sample_function(std::size_t n) {
  return generate_corpus(Grid(1, 1.0, n), {CorpusKind::steps, 1, 7})[0];
}

void BM_BmoNormSliding(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridFunction f = sample_function(n);
  const Weight w = unit_weight(f.grid());
  const CubeFamily fam = enumerate_cubes(f.grid(), FamilySpec::sliding_all());
  for (auto _ : state) benchmark::DoNotOptimize(bmo_norm(f, w, BmoVariant::strong(2.0), fam).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BmoNormSliding)->RangeMultiplier(2)->Range(32, 256);

void BM_MaximalPath(benchmark::State& state, MaximalPath path) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridFunction f = sample_function(n);
  const CubeFamily fam = enumerate_cubes(f.grid(), FamilySpec::dyadic());
  for (auto _ : state) benchmark::DoNotOptimize(maximal(f, MaximalSpec::sharp(), fam, path).max_abs());
}
BENCHMARK_CAPTURE(BM_MaximalPath, naive, MaximalPath::naive)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_MaximalPath, scatter, MaximalPath::scatter)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_MaximalPath, dyadic_tree, MaximalPath::dyadic_tree)->RangeMultiplier(4)->Range(64, 4096);

void BM_Bilinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g(1, 1.0, n);
  const BilinearOperator op(kernel_odd1d(), g);
  const GridFunction f1 = bump(g, {0.3, 0.5}, 0.2);
  const GridFunction f2 = bump(g, {0.6, 0.5}, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(eval_bilinear(op, f1, f2).max_abs());
}
BENCHMARK(BM_Bilinear)->RangeMultiplier(2)->Range(32, 256);

void BM_IteratedCommutator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid g(1, 1.0, n);
  const BilinearOperator op(kernel_odd1d(), g);
  const GridFunction b = log_exemplar(g, {0.5, 0.5});
  const GridFunction f1 = bump(g, {0.3, 0.5}, 0.2);
  const GridFunction f2 = bump(g, {0.6, 0.5}, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        commutator(CommutatorSlot::iterated, b, op, f1, f2, CommutatorForm::difference).max_abs());
  }
}
BENCHMARK(BM_IteratedCommutator)->RangeMultiplier(2)->Range(32, 128);

}  // namespace

BENCHMARK_MAIN();
