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

#include "smfbm/increments.hpp"
#include "smfbm/kernels.hpp"
#include "smfbm/numerics.hpp"

using namespace smfbm;

static void BM_SecondDiff(benchmark::State& state) {
  double x = 1.0;
  for (auto _ : state) {
    x += 1.0;
    benchmark::DoNotOptimize(num::second_diff(x, 1.0, 1.4));
  }
}
BENCHMARK(BM_SecondDiff);

static void BM_SmfbmCov(benchmark::State& state) {
  const MixCoeffs c(1.0, 1.0);
  const HurstParam h(0.7);
  double s = 0.1;
  for (auto _ : state) {
    s += 1e-6;
    benchmark::DoNotOptimize(smfbm_cov(s, 2.0 * s, c, h));
  }
}
BENCHMARK(BM_SmfbmCov);

static void BM_CovMatrix(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto spec = ProcessSpec::smfbm(MixCoeffs(1, 1), HurstParam(0.7));
  const auto grid = TimeGrid::uniform(0.0, 1.0, n - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cov_matrix(spec, grid).entries);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CovMatrix)->Arg(64)->Arg(256)->Arg(1024)->Complexity(benchmark::oNSquared);

static void BM_IncrCorr(benchmark::State& state) {
  const MixCoeffs c(1.0, 1.0);
  const HurstParam h(0.7);
  const IncrementWindow w(0.5, 2.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(incr_corr(w, c, h).value);
  }
}
BENCHMARK(BM_IncrCorr);

static void BM_LagCov(benchmark::State& state) {
  const MixCoeffs c(0.0, 1.0);
  const HurstParam h(0.7);
  long n = 2;
  for (auto _ : state) {
    n = n % 100000 + 2;
    benchmark::DoNotOptimize(lag_cov(1, n, c, h));
  }
}
BENCHMARK(BM_LagCov);

BENCHMARK_MAIN();
