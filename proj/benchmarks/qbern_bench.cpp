#include <benchmark/benchmark.h>

#include "qbern/carlitz.hpp"
#include "qbern/integral.hpp"
#include "qbern/padic.hpp"
#include "qbern/zpoly.hpp"

using namespace qbern;

static void BM_PadicMul(benchmark::State& state) {
  const PadicContext ctx(5, state.range(0));
  const auto a = PadicNumber::from_rational(mpq_class(17, 3), ctx);
  const auto b = PadicNumber::from_rational(mpq_class(-22, 7), ctx);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PadicMul)->Arg(20)->Arg(40)->Arg(200);

static void BM_PadicDiv(benchmark::State& state) {
  const PadicContext ctx(5, state.range(0));
  const auto a = PadicNumber::from_rational(mpq_class(17, 3), ctx);
  const auto b = PadicNumber::from_rational(mpq_class(-22, 7), ctx);
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(BM_PadicDiv)->Arg(20)->Arg(40)->Arg(200);

static void BM_ZPolyGcd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // (1+q)^n (1-q)^2 against (1+q)^(n/2) (2+q)
  ZPoly a = ZPoly::constant(1), b = ZPoly::constant(1);
  const ZPoly onep({1, 1}), onem({1, -1}), twop({2, 1});
  for (std::size_t i = 0; i < n; ++i) a = a * onep;
  for (std::size_t i = 0; i < n / 2; ++i) b = b * onep;
  a = a * onem * onem;
  b = b * twop;
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_ZPolyGcd)->Arg(8)->Arg(32);

static void BM_CarlitzSymbolic(benchmark::State& state) {
  for (auto _ : state) {
    CarlitzTable t(QContext::symbolic());
    benchmark::DoNotOptimize(t.beta(state.range(0)));
  }
}
BENCHMARK(BM_CarlitzSymbolic)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_CarlitzPadic(benchmark::State& state) {
  const auto ctx = QContext::padic(PadicContext(3, 80), mpq_class(4));
  for (auto _ : state) {
    CarlitzTable t(ctx);
    benchmark::DoNotOptimize(t.beta(state.range(0)));
  }
}
BENCHMARK(BM_CarlitzPadic)->Arg(8)->Arg(16);

static void BM_RiemannSum(benchmark::State& state) {
  const auto ctx = QContext::padic(PadicContext(3, 24), mpq_class(4));
  RiemannOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(riemann_sum(BracketPower{0, 3}, ctx, state.range(0), options));
  }
}
BENCHMARK(BM_RiemannSum)->Args({6, 1})->Args({8, 1})->Args({8, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
