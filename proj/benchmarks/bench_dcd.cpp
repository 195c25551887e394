#include <benchmark/benchmark.h>

#include "dcd/constructions.hpp"
#include "dcd/criteria.hpp"
#include "dcd/oa.hpp"
#include "dcd/verify.hpp"

namespace {

void BM_Case2Build(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto in = dcd::case2_inputs(dcd::GaloisField(s), 3);
  const dcd::Construction3Family fam{in.a, in.b, dcd::case2_default_select(s, s)};
  dcd::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(dcd::build(fam, dcd::sample_plan(fam, rng)));
}
BENCHMARK(BM_Case2Build)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_CheckDcd(benchmark::State& state) {
  const auto fam = dcd::Construction2Family{dcd::bush_oa(dcd::GaloisField(static_cast<int>(state.range(0))), 2),
                                            static_cast<int>(state.range(1)), 4};
  dcd::Rng rng(2);
  const auto d = dcd::build(fam, dcd::sample_plan(fam, rng));
  for (auto _ : state) benchmark::DoNotOptimize(dcd::check_dcd(d));
}
BENCHMARK(BM_CheckDcd)->Args({3, 3})->Args({5, 4})->Args({7, 2});

void BM_OmegaCoupled(benchmark::State& state) {
  const auto fam = dcd::Construction2Family{dcd::bush_oa(dcd::GaloisField(5), 2), 4, 4};
  dcd::Rng rng(3);
  const auto d = dcd::build(fam, dcd::sample_plan(fam, rng));
  for (auto _ : state) benchmark::DoNotOptimize(dcd::check_omega_coupled(d, 2));
}
BENCHMARK(BM_OmegaCoupled);

void BM_Criterion(benchmark::State& state) {
  const auto fam = dcd::Construction2Family{dcd::bush_oa(dcd::GaloisField(5), 2), 4, 4};
  dcd::Rng rng(4);
  const auto d2 = dcd::build(fam, dcd::sample_plan(fam, rng)).d2;
  const auto which = state.range(0) == 0 ? dcd::Criterion::Maximin : dcd::Criterion::CenteredL2;
  for (auto _ : state) benchmark::DoNotOptimize(dcd::score(d2, which));
}
BENCHMARK(BM_Criterion)->Arg(0)->Arg(1);

void BM_Optimize(benchmark::State& state) {
  const auto fam = dcd::Construction2Family{dcd::bush_oa(dcd::GaloisField(3), 2), 3, 3};
  dcd::OptimizeOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dcd::optimize_d2(fam, opts));
}
BENCHMARK(BM_Optimize)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
