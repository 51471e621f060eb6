// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hot-path micro-benchmarks: normalization constants, likelihood
// evaluation, the K-S scan, single fits, and sampling throughput.

#include <benchmark/benchmark.h>

#include <vector>

#include "citefit/distributions.hpp"
#include "citefit/evaluation.hpp"
#include "citefit/fitting.hpp"
#include "citefit/sampling.hpp"

namespace {

using namespace citefit;

CountDataset make_corpus(Count n, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.model = inflated_model(DlnParams{2.0, 1.1}, n / 10, n);
  spec.n = n;
  spec.seed = seed;
  return sample(spec);
}

void BM_HurwitzZeta(benchmark::State& state) {
  double alpha = 2.7, b = 4.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_hurwitz_zeta(alpha, b + 1.0));
    alpha += 1e-9;  // defeat caching of identical inputs
  }
}
BENCHMARK(BM_HurwitzZeta);

void BM_DlnNorm(benchmark::State& state) {
  double mu = 1.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dln_log_norm(DlnParams{mu, 1.2}));
    mu += 1e-9;
  }
}
BENCHMARK(BM_DlnNorm);

void BM_LogLikelihood(benchmark::State& state) {
  const CountDataset data = make_corpus(state.range(0), 7);
  const ZeroInflatedModel model = inflated_model(
      DlnParams{2.0, 1.1}, data.n_total() / 10, data.n_total());
  for (auto _ : state)
    benchmark::DoNotOptimize(log_likelihood(data, model));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Arg(1000)->Arg(10000);

void BM_KsStatistic(benchmark::State& state) {
  const CountDataset data = make_corpus(state.range(0), 11);
  const ZeroInflatedModel model = inflated_model(
      DlnParams{2.0, 1.1}, data.n_total() / 10, data.n_total());
  for (auto _ : state)
    benchmark::DoNotOptimize(ks_statistic(data, model));
}
BENCHMARK(BM_KsStatistic)->Arg(1000)->Arg(10000);

void BM_FitBase(benchmark::State& state) {
  const CountDataset data = make_corpus(2000, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_base(data, Family::DiscretisedLognormal));
  }
}
BENCHMARK(BM_FitBase)->Unit(benchmark::kMillisecond);

void BM_FitZeroInflated(benchmark::State& state) {
  const CountDataset data = make_corpus(1000, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_zero_inflated(data, Family::DiscretisedLognormal));
  }
}
BENCHMARK(BM_FitZeroInflated)->Unit(benchmark::kMillisecond);

void BM_Sampling(benchmark::State& state) {
  SyntheticSpec spec;
  spec.model = inflated_model(HookedParams{3.0, 8.0}, 150, 1000);
  spec.n = state.range(0);
  spec.seed = 23;
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sampling)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
