// Microbenchmarks for the counting kernels: congruence counts, the
// meet-in-the-middle box count, moment tables, the smooth sieve, and the
// oscillatory kernel.

#include <benchmark/benchmark.h>

#include <random>

#include "dcpair/congruence.hpp"
#include "dcpair/counting.hpp"
#include "dcpair/oscillatory.hpp"
#include "dcpair/search.hpp"
#include "dcpair/smooth.hpp"
#include "dcpair/system.hpp"

using namespace dcpair;

namespace {

CubicPairSystem bench_system(int s) {
  std::mt19937_64 rng(12345);
  std::vector<i64> a(s), b(s);
  for (int j = 0; j < s; ++j) {
    do {
      a[j] = static_cast<i64>(rng() % 19) - 9;
      b[j] = static_cast<i64>(rng() % 19) - 9;
    } while (a[j] == 0 && b[j] == 0);
  }
  return build_system(a, b);
}

}  // namespace

static void CongruenceRoots(benchmark::State& state) {
  CubicPairSystem sys = bench_system(13);
  u64 q = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    CongruenceCount c = count_congruence_roots(sys, q);
    benchmark::DoNotOptimize(c.count.get_mpz_t());
  }
}
BENCHMARK(CongruenceRoots)->Arg(49)->Arg(121)->Arg(343)->Arg(1331)->Unit(benchmark::kMillisecond);

static void CongruenceFold(benchmark::State& state) {
  CubicPairSystem sys = bench_system(13);
  u64 q = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    CongruenceCount c = count_congruence_fold(sys, q);
    benchmark::DoNotOptimize(c.count.get_mpz_t());
  }
}
BENCHMARK(CongruenceFold)->Arg(49)->Arg(121)->Unit(benchmark::kMillisecond);

static void BoxCountMitm(benchmark::State& state) {
  CubicPairSystem sys = bench_system(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CountReport r = count_solutions_box(sys, 4, true);
    benchmark::DoNotOptimize(r.exact.get_mpz_t());
  }
}
BENCHMARK(BoxCountMitm)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void SixthMomentTable(benchmark::State& state) {
  i64 P = state.range(0);
  for (auto _ : state) {
    CountReport r = sixth_moment_count(P, P);
    benchmark::DoNotOptimize(r.exact.get_mpz_t());
  }
}
BENCHMARK(SixthMomentTable)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void SmoothSieve(benchmark::State& state) {
  i64 P = state.range(0);
  for (auto _ : state) {
    SmoothSet s = smooth_numbers(P, default_smoothness_bound(P));
    benchmark::DoNotOptimize(s.elements.data());
  }
}
BENCHMARK(SmoothSieve)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void PhiKernel(benchmark::State& state) {
  phi_kernel(1.0);  // warm the table
  double t = 0.0;
  for (auto _ : state) {
    t += 0.37;
    if (t > 900.0) t = 0.0;
    benchmark::DoNotOptimize(phi_kernel(t));
  }
}
BENCHMARK(PhiKernel);

static void SingleCubicSearch(benchmark::State& state) {
  std::vector<i64> c{3, -5, 7, 2, -9, 4, 1};
  i64 H = state.range(0);
  for (auto _ : state) {
    auto sol = solve_single_cubic(c, H);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(SingleCubicSearch)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
