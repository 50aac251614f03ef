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

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "smfbm/kernels.hpp"
#include "smfbm/process.hpp"

namespace smfbm {

enum class SampleMethod { direct, constructive };

std::string to_string(SampleMethod m);
SampleMethod sample_method_from_string(const std::string& name);

// Dense factorizations cost O(n^3); anything larger than this needs a method
// this library deliberately does not provide (the sub-fractional covariance
// is non-stationary, so circulant tricks do not apply).
inline constexpr std::size_t kMaxGridPoints = 4096;

struct SamplerConfig {
  ProcessSpec spec;
  TimeGrid grid;
  int n_paths = 1;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::direct;
};

struct FactorResult {
  Eigen::MatrixXd lower;  // L with L L^T = cov + jitter I
  double jitter = 0.0;
};

// Cholesky factorization with escalating diagonal jitter: first attempt is
// exact; on failure jitter starts at 1e-14 * mean(diag) and grows tenfold,
// at most six retries. Throws numerical_error (mentioning `context`) if the
// matrix stays indefinite at the largest jitter. The caller must have removed
// zero rows (t = 0) beforehand.
FactorResult factorize(const Eigen::MatrixXd& cov, const std::string& context = {});

struct PathEnsemble {
  SamplerConfig config;
  // n_paths x grid-size sample matrix; the t = 0 column, when present, is
  // exactly zero.
  Eigen::MatrixXd values;
  double jitter = 0.0;            // largest jitter any factorization needed
  double factor_diag_ratio = 1.0; // min/max diagonal of L, conditioning hint
};

// Exact sampling through the process covariance: each path is L z with z
// standard normal. Bit-reproducible for a fixed (seed, path index) under any
// thread count.
PathEnsemble sample_direct(const SamplerConfig& cfg, int threads = 1);

// Exact sampling through the defining construction instead of the assembled
// kernel: fractional and Brownian components are drawn independently (on a
// sign-mirrored grid for the sub-fractional kinds) and combined as
// a * xi + b * xi^H. Same law as sample_direct, independent code path.
PathEnsemble sample_constructive(const SamplerConfig& cfg, int threads = 1);

// Dispatch on cfg.method.
PathEnsemble sample(const SamplerConfig& cfg, int threads = 1);

}  // namespace smfbm
