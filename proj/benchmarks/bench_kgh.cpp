#include <benchmark/benchmark.h>

#include "kgh/corpus.hpp"
#include "kgh/exponents.hpp"
#include "kgh/fourier.hpp"
#include "kgh/hartree.hpp"
#include "kgh/modulation.hpp"
#include "kgh/solver.hpp"
#include "kgh/split.hpp"

using namespace kgh;

namespace {

Field sample(int d, int n, double amplitude = 1.0) {
  CorpusSpec spec;
  spec.seed = 3;
  spec.amplitude = amplitude;
  return generate_corpus(spec, GridSpec::with_box_density(d, n, 2)).front();
}

void BM_Transform3d(benchmark::State& state) {
  const Field f = sample(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.to_frequency());
}
BENCHMARK(BM_Transform3d)->Arg(16)->Arg(32)->Arg(64);

void BM_HartreeNonlinearity(benchmark::State& state) {
  const Field f = sample(3, static_cast<int>(state.range(0)));
  const DiscreteNonlinearity nl(f.spec(), HartreeKernel::riesz(2.5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(nl.apply(f));
}
BENCHMARK(BM_HartreeNonlinearity)->Arg(16)->Arg(32);

void BM_ModulationNorm(benchmark::State& state) {
  const Field f = sample(3, static_cast<int>(state.range(0)));
  const ModulationParams params{4.5, 9.0 / 7, 1};
  benchmark::DoNotOptimize(modulation_norm(f, params));
  for (auto _ : state) benchmark::DoNotOptimize(modulation_norm(f, params));
}
BENCHMARK(BM_ModulationNorm)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HighLowSplit(benchmark::State& state) {
  const Field f = sample(3, 16);
  const auto table = exponent_table(Rational(5, 2), Rational(11, 5));
  for (auto _ : state) {
    HighLowSplitter splitter(f, table);
    for (double N : {2.0, 4.0, 8.0, 16.0}) benchmark::DoNotOptimize(splitter.split(N));
  }
}
BENCHMARK(BM_HighLowSplit)->Unit(benchmark::kMillisecond);

void BM_EvolveSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field f = sample(3, n, 4.0);
  const Field g(f.spec());
  const auto kernel = HartreeKernel::riesz(2.5, 3);
  EvolveOptions opts;
  opts.T = 0.02;
  opts.dt = 2e-3;
  opts.keep_states = false;
  opts.sample_stride = 10;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(f, g, kernel, opts));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_EvolveSteps)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
