#include <benchmark/benchmark.h>

#include "forminv/bench.hpp"
#include "forminv/inversion.hpp"
#include "forminv/trees.hpp"

namespace {

using namespace forminv;

const MapF& dense_cubic() {
  static const MapF f = MapF::from_h(dense_homogeneous(3, 3, 20240607));
  return f;
}

void invert_method(benchmark::State& state, Method m) {
  const int deg = static_cast<int>(state.range(0));
  std::size_t terms = 0;
  for (auto _ : state) {
    PolyMap g = invert(m, dense_cubic(), deg);
    terms = 0;
    for (const auto& s : g) terms += s.size();
    benchmark::DoNotOptimize(terms);
  }
  state.counters["terms"] = static_cast<double>(terms);
}

void BM_Recurrent(benchmark::State& s) { invert_method(s, Method::Recurrent); }
void BM_Homogeneous(benchmark::State& s) { invert_method(s, Method::Homogeneous); }
void BM_AbhyankarGurjar(benchmark::State& s) { invert_method(s, Method::AbhyankarGurjar); }
void BM_Bcw(benchmark::State& s) { invert_method(s, Method::Bcw); }
void BM_FixedPoint(benchmark::State& s) { invert_method(s, Method::FixedPoint); }

BENCHMARK(BM_Recurrent)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Homogeneous)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbhyankarGurjar)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bcw)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPoint)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_EnumerateTrees(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_trees(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(6, 12, 2);

void BM_Compose(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  PolyMap f = dense_cubic().f();
  PolyMap g = invert(Method::Recurrent, dense_cubic(), deg);
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, g, deg));
}
BENCHMARK(BM_Compose)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
