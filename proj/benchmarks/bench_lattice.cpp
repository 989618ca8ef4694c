#include <benchmark/benchmark.h>

#include "ifsc/lattice.hpp"
#include "ifsc/matrix.hpp"
#include "ifsc/rates.hpp"
#include "ifsc/rng.hpp"

namespace {

using namespace ifsc;

// Rate-shaped lattices (Cholesky of I + K/d) are what the search actually
// runs on, so benchmark those rather than raw Gaussian bases.
LatticeBasis rate_basis(int k, double d, std::uint64_t seed) {
  Matrix g = random_gaussian_matrix(k, k, seed);
  Matrix kxx = g * g.transpose();
  Matrix m = Matrix::Identity(k, k) + kxx / d;
  return LatticeBasis(cholesky(m).transpose());
}

void bm_lll(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  LatticeBasis basis = rate_basis(k, 0.1, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lll_reduce(basis));
  }
}
BENCHMARK(bm_lll)->DenseRange(2, 8);

void bm_enumerate(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  LatticeBasis basis = rate_basis(k, 0.1, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_minima(basis));
  }
}
BENCHMARK(bm_enumerate)->DenseRange(2, 8);

void bm_r_if(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Matrix g = random_gaussian_matrix(k, k, 13);
  CovarianceMatrix kxx(g * g.transpose() + 1e-9 * Matrix::Identity(k, k));
  const MinimaMethod method =
      state.range(1) == 0 ? MinimaMethod::lll : MinimaMethod::enumerate;
  for (auto _ : state) {
    benchmark::DoNotOptimize(r_if(kxx, 0.1, method));
  }
}
BENCHMARK(bm_r_if)
    ->ArgsProduct({benchmark::CreateDenseRange(2, 6, 1), {0, 1}})
    ->ArgNames({"k", "enum"});

}  // namespace

BENCHMARK_MAIN();
