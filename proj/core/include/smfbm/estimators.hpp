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

#include "smfbm/increments.hpp"
#include "smfbm/simulate.hpp"

namespace smfbm {

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
};

// Sample mean of X_i X_j across paths. The processes are centered by
// construction, so no sample mean is subtracted (subtracting one would bias
// small ensembles). std_error is the sample standard deviation of the
// products over sqrt(n_paths).
EstimateWithError empirical_cov(const PathEnsemble& e, std::size_t i, std::size_t j);

// Sample Pearson correlation between the increments over [s, s+h] and
// [t, t+h]. All four window endpoints must lie on the ensemble grid (no
// interpolation). std_error uses the Fisher-transform approximation
// 1/sqrt(n_paths - 3).
EstimateWithError empirical_incr_corr(const PathEnsemble& e, const IncrementWindow& w);

// Mean over paths of the sum of squared increments. Requires a uniform grid
// starting at 0; its expectation is expected_qv(T, n, c, H).
EstimateWithError realized_qv(const PathEnsemble& e);

}  // namespace smfbm
