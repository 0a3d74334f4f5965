// Serial versus parallel kernels: integer convolution, series multiplication
// and row reduction of a basis-construction-sized generator set.

#include <benchmark/benchmark.h>

#include <random>

#include "zagier/linalg.hpp"
#include "zagier/modforms.hpp"
#include "zagier/qseries.hpp"

using namespace zagier;

namespace {

std::vector<mpz_class> random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<mpz_class> v(n);
  for (auto& x : v) {
    x = static_cast<long>(rng());
    x *= static_cast<long>(rng());
  }
  return v;
}

void BM_ConvSerial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  std::vector<mpz_class> out;
  for (auto _ : st) {
    conv_serial(a, b, out, n);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ConvParallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  std::vector<mpz_class> out;
  for (auto _ : st) {
    conv_parallel(a, b, out, n);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_MulReference(benchmark::State& st) {
  const Exp n = st.range(0);
  const QSeries a = eisenstein(4, n), b = hauptmodul_inverse(5, n);
  for (auto _ : st) benchmark::DoNotOptimize(mul_reference(a, b));
}

void BM_Mul(benchmark::State& st) {
  const Exp n = st.range(0);
  const QSeries a = eisenstein(4, n), b = hauptmodul_inverse(5, n);
  for (auto _ : st) benchmark::DoNotOptimize(mul(a, b));
}

std::vector<QSeries> generators(Exp n) {
  // E4 * Psi_5^j, j = 0..39: a triangular system like the basis builders'.
  std::vector<QSeries> g;
  const QSeries psi = hauptmodul_inverse(5, n + 40);
  QSeries cur = eisenstein(4, n + 40);
  for (int j = 0; j < 40; ++j) {
    g.push_back(cur.truncated(n));
    cur = mul(cur, psi);
  }
  return g;
}

void BM_RowReduceReference(benchmark::State& st) {
  const auto gens = generators(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(row_reduce_reference(gens));
}

void BM_RowReduce(benchmark::State& st) {
  const auto gens = generators(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(row_reduce(gens));
}

}  // namespace

BENCHMARK(BM_ConvSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MulReference)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mul)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RowReduceReference)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowReduce)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
