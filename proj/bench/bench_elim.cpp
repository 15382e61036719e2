// Blocked modular elimination against the unblocked reference on random
// low-rank matrices shaped like the large df-wedge slices.
#include <benchmark/benchmark.h>

#include <random>

#include "arrspec/modp.hpp"

using namespace arrspec::modp;

namespace {

Dense make(int m, int n, int k) {
  Field F(kPrimes[0]);
  std::mt19937_64 g(42);
  Dense X(m, k), Y(k, n), A(m, n);
  for (auto& v : X.a) v = g() % F.p;
  for (auto& v : Y.a) v = g() % F.p;
  gemm_acc(A, X, Y, 1.0, F);
  return A;
}

void BM_Blocked(benchmark::State& st) {
  Field F(kPrimes[0]);
  Dense A = make(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(echelon(A, F, st.range(3)).rank);
}

void BM_Reference(benchmark::State& st) {
  Field F(kPrimes[0]);
  Dense A = make(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(echelon_reference(A, F, st.range(3)).rank);
}

}  // namespace

// rows, cols, rank, reduce
BENCHMARK(BM_Blocked)->Args({400, 700, 350, 0})->Args({400, 700, 350, 1})->Args({1200, 2000, 1000, 0})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reference)->Args({400, 700, 350, 0})->Args({400, 700, 350, 1})->Args({1200, 2000, 1000, 0})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
