#include <benchmark/benchmark.h>

#include <plsat/bounds.hpp>
#include <plsat/sampler.hpp>
#include <plsat/solvers.hpp>
#include <plsat/twosat.hpp>
#include <plsat/weights.hpp>

using namespace plsat;

static void BM_BuildConcrete(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) {
    auto ws = build_concrete(n, 2.75);
    benchmark::DoNotOptimize(ws.weights.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(BM_BuildConcrete)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_AliasTableBuild(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  auto vd = distribution(build_concrete(n, 2.75));
  for (auto _ : state) {
    AliasTable at(vd.p);
    benchmark::DoNotOptimize(at.size());
  }
}
BENCHMARK(BM_AliasTableBuild)->Arg(10000)->Arg(100000);

// clauses per second, the dominant cost of every sweep
static void BM_SampleFormula(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const double beta = double(state.range(1)) / 100.0;
  auto vd = distribution(build_concrete(n, beta));
  const std::size_t m = 4 * n;
  uint64_t seed = 1;
  for (auto _ : state) {
    auto [f, st] = sample_formula(vd, m, 3, seed++);
    benchmark::DoNotOptimize(f.clauses.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(m));
}
BENCHMARK(BM_SampleFormula)
    ->Args({10000, 275})
    ->Args({100000, 275})
    ->Args({10000, 220});

static void BM_CertifyByShrinking(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  auto ws = build_concrete(n, 3.0);
  auto vd = distribution(ws);
  auto [f, st] = sample_formula(vd, n / 2, 3, 7);
  for (auto _ : state) {
    auto cert = certify_by_shrinking(f, ws);
    benchmark::DoNotOptimize(cert.status);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(f.m()));
}
BENCHMARK(BM_CertifyByShrinking)->Arg(10000)->Arg(100000);

static void BM_SolveComplete(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  auto vd = distribution(build_concrete(n, 2.5));
  auto [f, st] = sample_formula(vd, 4 * n, 3, 11);
  for (auto _ : state) {
    auto out = solve_complete(f);
    benchmark::DoNotOptimize(out.status);
  }
}
BENCHMARK(BM_SolveComplete)->Arg(100)->Arg(200);

static void BM_LhsPowerlawBuckets(benchmark::State& state) {
  const std::size_t N = std::size_t(state.range(0));
  for (auto _ : state) {
    double v = lhs_powerlaw(2.75, 3, 3.9, N, BoundMode::BucketProduct);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_LhsPowerlawBuckets)->Arg(10000)->Arg(100000);

static void BM_LhsPowerlawIntegral(benchmark::State& state) {
  for (auto _ : state) {
    double v = lhs_powerlaw(2.75, 3, 3.9, 0, BoundMode::IntegralLimit);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_LhsPowerlawIntegral);

static void BM_Threshold(benchmark::State& state) {
  BoundQuery q;
  q.k = std::size_t(state.range(0));
  q.model = BoundQuery::Model::PowerLaw;
  q.beta = 2.75;
  for (auto _ : state) {
    auto res = threshold(q);
    benchmark::DoNotOptimize(res.r_star);
  }
}
BENCHMARK(BM_Threshold)->Arg(3)->Arg(10);

BENCHMARK_MAIN();
