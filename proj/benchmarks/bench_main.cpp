#include <benchmark/benchmark.h>

#include <random>

#include "wpdet/densities.hpp"
#include "wpdet/detmethod.hpp"
#include "wpdet/form_io.hpp"
#include "wpdet/hilbert.hpp"
#include "wpdet/matrix.hpp"
#include "wpdet/sieve.hpp"

using namespace wpdet;

static void BM_HilbertRow(benchmark::State& state) {
  const Surface X = make_surface(parse_binary_form("x^6+2y^6"), 2);
  const PrincipalIdeal I = X.ideal();
  const auto u = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_row(I, u));
}
BENCHMARK(BM_HilbertRow)->Arg(50)->Arg(100)->Arg(200);

static void BM_RhoBinary(benchmark::State& state) {
  const BinaryForm f = parse_binary_form("x^3+2y^3");
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rho_binary(f, p * p));
}
BENCHMARK(BM_RhoBinary)->Arg(101)->Arg(9973)->Arg(999983);

static void BM_DensityBinary(benchmark::State& state) {
  const BinaryForm f = parse_binary_form("x^3+2y^3");
  for (auto _ : state) benchmark::DoNotOptimize(density_binary(f, 2, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_DensityBinary)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_CountKfree(benchmark::State& state) {
  const BinaryForm f = parse_binary_form("x^3+2y^3");
  for (auto _ : state) benchmark::DoNotOptimize(count_kfree(f, 2, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_CountKfree)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_Determinant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> coef(-1000000, 1000000);
  IntegerMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = coef(rng);
  for (auto _ : state) benchmark::DoNotOptimize(M.determinant());
}
BENCHMARK(BM_Determinant)->Arg(8)->Arg(16)->Arg(32);

static void BM_Pipeline(benchmark::State& state) {
  const BinaryForm f = parse_binary_form("x^6+2y^6");
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(f, 2, 50, Rational(1), true));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
