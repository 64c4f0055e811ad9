#include <benchmark/benchmark.h>

#include "eisenlift/eisenstein.hpp"
#include "eisenlift/realquad.hpp"
#include "eisenlift/thetalift.hpp"

namespace {

using namespace eisenlift;

void BM_CycMul(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  CycElem a = zeta_pow(N, 1) + CycElem(N, Rat(3, 7));
  CycElem b = zeta_pow(N, N - 1) * Rat(-2, 5) + CycElem(N, Rat(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_CycMul)->Arg(5)->Arg(12)->Arg(16);

void BM_ExpandE(benchmark::State& state) {
  int N = 5;
  std::int64_t prec = state.range(0);
  for (auto _ : state) {
    clear_series_cache();
    benchmark::DoNotOptimize(expand_E(2, 1, 2, N, prec));
  }
}
BENCHMARK(BM_ExpandE)->Arg(50)->Arg(200)->Arg(800);

void BM_G1Product(benchmark::State& state) {
  int N = 7;
  std::int64_t prec = state.range(0);
  QSeries a = expand_G(1, 1, N, prec);
  QSeries b = expand_G(1, 3, N, prec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_G1Product)->Arg(20)->Arg(60);

void BM_MinusCF(benchmark::State& state) {
  Int a = Int("982451653"), c = Int("57885161");
  for (auto _ : state) {
    benchmark::DoNotOptimize(minus_cf(a, c));
  }
}
BENCHMARK(BM_MinusCF);

void BM_LiftCycle(benchmark::State& state) {
  int N = 5;
  MatZ g = MatZ(1, 0, 5, 1) * MatZ(1, 1, 0, 1) * MatZ(1, 0, 5, 1) * MatZ(1, 2, 0, 1);
  lift_cycle(g, N, 20);  // warm the series caches once
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_cycle(g, N, 20));
  }
}
BENCHMARK(BM_LiftCycle);

void BM_FundamentalUnit(benchmark::State& state) {
  Int delta = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fundamental_unit(delta));
  }
}
BENCHMARK(BM_FundamentalUnit)->Arg(5)->Arg(244)->Arg(3981);

}  // namespace

BENCHMARK_MAIN();
