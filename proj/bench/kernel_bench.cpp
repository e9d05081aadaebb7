// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/forest.hpp"
#include "gcjstyle/kernels.hpp"
#include "gcjstyle/rng.hpp"

using namespace gcjstyle;

namespace {

Matrix gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, d);
  for (double& v : x.data()) v = rng.normal();
  return x;
}

template <bool kParallel>
void BM_PairwiseSqDists(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = gaussian(n, 30, 1);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::pairwise_sq_dists_parallel(x, out);
    } else {
      kernels::pairwise_sq_dists_serial(x, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <bool kParallel>
void BM_TsneGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = gaussian(n, 30, 2);
  const cluster::Affinities aff = cluster::compute_affinities(x, 30.0);
  const Matrix y = gaussian(n, 2, 3);
  Matrix grad(n, 2);
  std::vector<double> num(n * n);
  for (auto _ : state) {
    double z;
    if constexpr (kParallel) {
      z = kernels::tsne_gradient_parallel(aff.joint, y, 1.0, grad, num);
    } else {
      z = kernels::tsne_gradient_serial(aff.joint, y, 1.0, grad, num);
    }
    benchmark::DoNotOptimize(z);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

template <bool kParallel>
void BM_AssignNearest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = gaussian(n, 30, 4);
  const Matrix c = gaussian(8, 30, 5);
  std::vector<int> assignment(n, -1);
  std::vector<double> dist(n);
  for (auto _ : state) {
    std::size_t changed;
    if constexpr (kParallel) {
      changed = kernels::assign_nearest_parallel(x, c, assignment, dist);
    } else {
      changed = kernels::assign_nearest_serial(x, c, assignment, dist);
    }
    benchmark::DoNotOptimize(changed);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool kParallel>
void BM_ForestFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = gaussian(n, 30, 6);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = x(i, 0) + 0.5 * x(i, 1) > 0 ? 1 : 0;
  learn::ForestOptions opt;
  opt.parallel = kParallel;
  for (auto _ : state) {
    learn::RandomForest forest;
    forest.fit(x, labels, 2, opt, 7);
    benchmark::DoNotOptimize(forest.trees().data());
  }
}

}  // namespace

BENCHMARK(BM_PairwiseSqDists<false>)->Name("pairwise_sq_dists/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_PairwiseSqDists<true>)->Name("pairwise_sq_dists/parallel")->Arg(500)->Arg(2000);
BENCHMARK(BM_TsneGradient<false>)->Name("tsne_gradient/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_TsneGradient<true>)->Name("tsne_gradient/parallel")->Arg(500)->Arg(2000);
BENCHMARK(BM_AssignNearest<false>)->Name("assign_nearest/serial")->Arg(10000)->Arg(100000);
BENCHMARK(BM_AssignNearest<true>)->Name("assign_nearest/parallel")->Arg(10000)->Arg(100000);
BENCHMARK(BM_ForestFit<false>)->Name("forest_fit/serial")->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForestFit<true>)->Name("forest_fit/parallel")->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
