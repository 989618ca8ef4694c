#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "ifsc/matrix.hpp"
#include "ifsc/oneshot.hpp"
#include "ifsc/rng.hpp"

namespace {

using namespace ifsc;

CovarianceMatrix corr2() {
  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  return CovarianceMatrix(m);
}

void bm_encode(benchmark::State& state) {
  ScalarNestedPair pair = ScalarNestedPair::from_rate(0.1, 8.0);
  RandomStream s(1);
  double x = s.normal(), u = s.uniform_symmetric(0.5 * pair.fine_step());
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(x, u, pair));
  }
}
BENCHMARK(bm_encode);

void bm_decode(benchmark::State& state) {
  ScalarNestedPair pair = ScalarNestedPair::from_rate(0.1, 8.0);
  IntMatrix am(2, 2);
  am << 1, 0, 1, 1;
  IntegerCoeffMatrix a(am);
  std::vector<long long> idx{encode(0.9, 0.0, pair), encode(-0.4, 0.0, pair)};
  std::vector<double> dithers{0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(idx, dithers, a, pair));
  }
}
BENCHMARK(bm_decode);

void bm_simulate(benchmark::State& state) {
  CovarianceMatrix kxx = corr2();
  const long long trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(kxx, 0.1, 9.0, std::nullopt, trials, 3));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(bm_simulate)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
