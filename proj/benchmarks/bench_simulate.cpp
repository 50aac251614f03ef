// Copyright 2026 the smfbm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "smfbm/diagnostics.hpp"
#include "smfbm/rng.hpp"
#include "smfbm/simulate.hpp"

using namespace smfbm;

static void BM_PhiloxBlock(benchmark::State& state) {
  std::uint64_t ctr = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng::Philox4x32::block(42, 7, ++ctr));
  }
}
BENCHMARK(BM_PhiloxBlock);

static void BM_GaussianDraw(benchmark::State& state) {
  const rng::GaussianStream stream(42, 7);
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.normal(++k));
  }
}
BENCHMARK(BM_GaussianDraw);

static void BM_Factorize(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto cov = cov_matrix(ProcessSpec::smfbm(MixCoeffs(1, 1), HurstParam(0.7)),
                              TimeGrid::uniform(1.0 / n, 1.0, n - 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(cov.entries).lower);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Factorize)->Arg(64)->Arg(256)->Arg(1024)->Complexity(benchmark::oNCubed);

static void BM_SampleDirect(benchmark::State& state) {
  const auto paths = static_cast<int>(state.range(0));
  const SamplerConfig cfg{ProcessSpec::smfbm(MixCoeffs(1, 1), HurstParam(0.7)),
                          TimeGrid::uniform(0.0, 1.0, 63), paths, 11,
                          SampleMethod::direct};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_direct(cfg, 2).values);
  }
  state.SetItemsProcessed(state.iterations() * paths);
}
BENCHMARK(BM_SampleDirect)->Arg(256)->Arg(4096);

static void BM_ExpectedQv(benchmark::State& state) {
  const auto n = static_cast<long>(state.range(0));
  const MixCoeffs c(1, 1);
  const HurstParam h(0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_qv(1.0, n, c, h));
  }
}
BENCHMARK(BM_ExpectedQv)->Arg(1 << 10)->Arg(1 << 16);

static void BM_CondL2Sum(benchmark::State& state) {
  const auto n = static_cast<long>(state.range(0));
  const MixCoeffs c(1, 1);
  const HurstParam h(0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cond_l2_sum(1.0, n, c, h).total);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CondL2Sum)->Arg(64)->Arg(256)->Complexity(benchmark::oNCubed);

BENCHMARK_MAIN();
