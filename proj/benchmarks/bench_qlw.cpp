// Microbenchmarks for the exact-arithmetic pipeline.

#include <benchmark/benchmark.h>

#include "qlw/cp_engine.hpp"
#include "qlw/loop_rep.hpp"
#include "qlw/qnumbers.hpp"
#include "qlw/qweyl.hpp"

namespace {

using qlw::ScalarQ;

void BM_ScalarRationalArithmetic(benchmark::State& state) {
  const ScalarQ a = ScalarQ::parse("(q^3+2*q-1)/(q^2+1)");
  const ScalarQ b = ScalarQ::parse("(q^2-q+5)/(q^4-3)");
  for (auto _ : state) {
    ScalarQ c = a * b + a / b - b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ScalarRationalArithmetic);

void BM_QBinomial(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(qlw::qbinom(n, n / 2));
}
BENCHMARK(BM_QBinomial)->Arg(8)->Arg(16)->Arg(32);

void BM_EvalModule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qlw::eval_module(n, ScalarQ::q().pow(2)));
}
BENCHMARK(BM_EvalModule)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_LatticeOperator(benchmark::State& state) {
  const auto rep = qlw::eval_module(static_cast<int>(state.range(0)), ScalarQ(1L));
  for (auto _ : state) benchmark::DoNotOptimize(qlw::lattice_operator(rep));
}
BENCHMARK(BM_LatticeOperator)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CPRational(benchmark::State& state) {
  const auto rep = qlw::eval_module(static_cast<int>(state.range(0)), ScalarQ(1L));
  for (auto _ : state) benchmark::DoNotOptimize(qlw::cp_rational(rep, qlw::default_order(rep)));
}
BENCHMARK(BM_CPRational)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_MainTheorem(benchmark::State& state) {
  const auto rep = qlw::eval_module(static_cast<int>(state.range(0)), ScalarQ(-1L));
  for (auto _ : state) benchmark::DoNotOptimize(qlw::verify_main_theorem(rep));
}
BENCHMARK(BM_MainTheorem)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
