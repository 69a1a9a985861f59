#include <benchmark/benchmark.h>

#include <random>

#include "lds/copula.hpp"
#include "lds/discrepancy.hpp"
#include "lds/numeration.hpp"
#include "lds/sequences.hpp"

using namespace lds;

static void BM_Hungarian(benchmark::State& state) {
  size_t n = (size_t)state.range(0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> cost(n * n);
  for (auto& c : cost) c = u(rng);
  for (auto _ : state) {
    auto r = copula::hungarian(cost, n, copula::Sense::min);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(32, 1024)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_LsPoints(benchmark::State& state) {
  auto params = partitions::make_ls_params(1, 1);
  for (auto _ : state) {
    auto pts = sequences::ls_points(params, (size_t)state.range(0));
    benchmark::DoNotOptimize(pts.size());
  }
}
BENCHMARK(BM_LsPoints)->Range(256, 16384)->Unit(benchmark::kMillisecond);

static void BM_KfOrbit(benchmark::State& state) {
  sequences::KFMap T;
  auto zero = field::AlgExt::from_rational(T.ls().field, 0);
  for (auto _ : state) {
    auto orb = T.orbit(zero, (size_t)state.range(0));
    benchmark::DoNotOptimize(orb.size());
  }
}
BENCHMARK(BM_KfOrbit)->Range(256, 8192)->Unit(benchmark::kMillisecond);

static void BM_Discrepancy1D(benchmark::State& state) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> pts((size_t)state.range(0));
  for (auto& x : pts) x = u(rng);
  for (auto _ : state) {
    auto rep = discrepancy::discrepancy_1d(pts);
    benchmark::DoNotOptimize(rep.dn);
  }
}
BENCHMARK(BM_Discrepancy1D)->Range(1024, 1 << 17);

static void BM_Star2D(benchmark::State& state) {
  auto stream = sequences::make_halton_stream({2, 3});
  std::vector<std::vector<double>> pts;
  for (long i = 0; i < state.range(0); ++i) pts.push_back(stream->next().x);
  for (auto _ : state) {
    auto rep = discrepancy::star_discrepancy_multi(pts);
    benchmark::DoNotOptimize(rep.dn_star);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Star2D)->RangeMultiplier(4)->Range(64, 4096)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_Odometer(benchmark::State& state) {
  auto sys = numeration::build_system({1, 0, 1});
  for (auto _ : state) {
    numeration::DigitString d;
    for (int i = 0; i < state.range(0); ++i) d = numeration::odometer_step(d, *sys);
    benchmark::DoNotOptimize(d.digits.size());
  }
}
BENCHMARK(BM_Odometer)->Range(1024, 65536)->Unit(benchmark::kMillisecond);

static void BM_SandwichSin(benchmark::State& state) {
  auto cells = copula::exact_extrema_sin_sum();
  for (auto _ : state) {
    auto r = copula::sandwich_bounds(cells, (int)state.range(0), copula::Sense::max);
    benchmark::DoNotOptimize(r.ub);
  }
}
BENCHMARK(BM_SandwichSin)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
