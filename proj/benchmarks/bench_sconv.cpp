#include <benchmark/benchmark.h>

#include "sconv/analysis.hpp"
#include "sconv/arith.hpp"
#include "sconv/conv.hpp"
#include "sconv/functions.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/sset.hpp"
#include "sconv/verify.hpp"

using namespace sconv;

static void BM_SievePrimes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

static void BM_FactorTable(benchmark::State& state) {
  for (auto _ : state) {
    FactorTable t(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(t.limit());
  }
}
BENCHMARK(BM_FactorTable)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

static void BM_TauTable(benchmark::State& state) {
  const SSet s = parse_sset("L2");
  for (auto _ : state) benchmark::DoNotOptimize(tau_S_table(s, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_TauTable)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

static void BM_SigmaTableWorkers(benchmark::State& state) {
  const SSet s = parse_sset("Q2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_S_table(s, 1'000'000, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_SigmaTableWorkers)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SConvolveTable(benchmark::State& state) {
  const SSet s = parse_sset(state.range(1) == 0 ? "N" : "F{1,6}");
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const DenseTable f = random_table(n, 1);
  const DenseTable g = random_table(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(s_convolve_table(s, f, g, n));
}
BENCHMARK(BM_SConvolveTable)->ArgsProduct({{1'000, 10'000, 100'000}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_SInverse(benchmark::State& state) {
  const SSet s = parse_sset("L3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_inverse(s, ArithFunc(NamedFunction::One), static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_SInverse)->RangeMultiplier(4)->Range(1'024, 16'384)->Unit(benchmark::kMillisecond);

static void BM_MuSTable(benchmark::State& state) {
  const SSet s = parse_sset("P{2,3}");
  for (auto _ : state) benchmark::DoNotOptimize(mu_S_table(s, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_MuSTable)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

static void BM_ZetaS(benchmark::State& state) {
  const SSet s = parse_sset("Q3");
  for (auto _ : state) benchmark::DoNotOptimize(zeta_S(s, 2.0, 1e-6));
}
BENCHMARK(BM_ZetaS)->Unit(benchmark::kMillisecond);

static void BM_GronwallScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gronwall_check(5041, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_GronwallScan)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
