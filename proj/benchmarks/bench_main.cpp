#include <benchmark/benchmark.h>

#include <random>

#include "hopfcyc/cohomology.hpp"
#include "hopfcyc/fixtures.hpp"

using namespace hc;

namespace {

SparseMatrix random_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, 9), num(-5, 5), den(1, 4);
  std::vector<SparseVec> cs;
  for (Index j = 0; j < cols; ++j) {
    VecBuilder b;
    for (Index i = 0; i < rows; ++i)
      if (pick(rng) < 2) b.add(i, make_scalar(num(rng), den(rng)));
    cs.push_back(b.finish());
  }
  return SparseMatrix::from_columns(rows, std::move(cs));
}

void BM_KernelBasis(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  auto m = random_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelBasis)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_Compose(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  auto a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose)->RangeMultiplier(4)->Range(16, 256);

void BM_HopfComplexSweedler(benchmark::State& state) {
  auto mp = fixtures::sweedler_pair(false, true);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_hopf_complex(mp, n));
}
BENCHMARK(BM_HopfComplexSweedler)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_PlainComplex(benchmark::State& state) {
  auto a = fixtures::swap_module_algebra().alg;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_plain_complex(a, n));
}
BENCHMARK(BM_PlainComplex)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_CohomologyZ3(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto c = build_ans_complex(fixtures::trivial_pair(fixtures::cyclic_group(3)), n);
  for (auto _ : state) benchmark::DoNotOptimize(compute_cohomology(c));
}
BENCHMARK(BM_CohomologyZ3)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_CohomologySweedler(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto c = build_ans_complex(fixtures::sweedler_pair(true, false), n);
  for (auto _ : state) benchmark::DoNotOptimize(compute_cohomology(c));
}
BENCHMARK(BM_CohomologySweedler)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
