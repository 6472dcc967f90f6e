#include "pstirling/limits.hpp"
#include "pstirling/modular_comb.hpp"

#include <benchmark/benchmark.h>

using namespace pstirling;

namespace {

// C(n, k) mod 2^N with n around 2^(N+12), the size the limit evaluators use
void BM_BinomialHugeN(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BigInt n = big_pow(2, static_cast<unsigned long>(N + 12)) * 3 - 1;
  const BigInt k = big_pow(2, static_cast<unsigned long>(N + 11)) + 12345;
  unit_factorial_table(2, N);
  for (auto _ : state) benchmark::DoNotOptimize(binomial_mod_prime_power(n, k, 2, N));
}
BENCHMARK(BM_BinomialHugeN)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_BinomialScanFallback(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(binomial_mod_prime_power(200000, 77777, 3, 16));
}
BENCHMARK(BM_BinomialScanFallback);

void BM_StirlingFast(benchmark::State& state) {
  const unsigned long d = static_cast<unsigned long>(state.range(0));
  const BigInt n = big_pow(3, 10) * 2 + 4000 + d;
  for (auto _ : state) benchmark::DoNotOptimize(stirling_mod_fast(n, 8, 1, d, 3, 6));
}
BENCHMARK(BM_StirlingFast)->Arg(1)->Arg(4)->Arg(8);

void BM_StirlingConvolution(benchmark::State& state) {
  const unsigned long d = static_cast<unsigned long>(state.range(0));
  const BigInt n = big_pow(3, 10) * 2 + 4000 + d;
  for (auto _ : state) benchmark::DoNotOptimize(stirling_mod_convolution(n, 8, 1, d, 3, 6));
}
BENCHMARK(BM_StirlingConvolution)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LimitEmpirical(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stirling_limit_empirical({3, 2, 1, 0, 2, digits}));
}
BENCHMARK(BM_LimitEmpirical)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_LimitClosed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stirling_limit_closed({2, 3, 1, 3, 2, 8}));
}
BENCHMARK(BM_LimitClosed)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
