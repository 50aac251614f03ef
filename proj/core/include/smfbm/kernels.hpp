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

#include "smfbm/process.hpp"

namespace smfbm {

// Covariance of fractional Brownian motion with Hurst index H:
//   (|t|^{2H} + |s|^{2H} - |t-s|^{2H}) / 2.
// Defined for all real s, t; the constructive sampler evaluates it on
// mirrored grids. H = 1/2 short-circuits to the exact Brownian overlap.
double fbm_cov(double s, double t, HurstParam h);

// Covariance of sub-fractional Brownian motion, s, t >= 0:
//   s^{2H} + t^{2H} - ((s+t)^{2H} + |t-s|^{2H}) / 2.
// Internally evaluated as min^{2H} minus half a central second difference,
// which holds ~1e-10 relative accuracy for arguments up to ~1e6 where the
// textbook expression cancels catastrophically.
double sfbm_cov(double s, double t, HurstParam h);

// Covariance of the mixed process a*B + b*B^H, s, t >= 0.
double mfbm_cov(double s, double t, const MixCoeffs& c, HurstParam h);

// Covariance of the sub-mixed process a*xi + b*xi^H, s, t >= 0. Decomposes
// exactly as a^2 min(s,t) + b^2 sfbm_cov(s,t).
double smfbm_cov(double s, double t, const MixCoeffs& c, HurstParam h);

// Variance of the sub-mixed process: a^2 t + b^2 (2 - 2^{2H-1}) t^{2H}.
double smfbm_var(double t, const MixCoeffs& c, HurstParam h);

// Mixed self-similarity parameter map: dilating time by h > 0 is in law the
// same as rescaling the coefficients to (a h^{1/2}, b h^H).
MixCoeffs rescale_params(const MixCoeffs& c, HurstParam h_index, double h);

// Dense kernel matrix over a grid, with its factorization bookkeeping.
struct CovarianceMatrix {
  TimeGrid grid;
  Eigen::MatrixXd entries;      // symmetric, entries(i,j) = kernel(grid[i], grid[j])
  double jitter_applied = 0.0;  // diagonal regularization added downstream
};

// Assembles the upper triangle pointwise and mirrors, so the result is
// symmetric exactly, not just up to rounding.
CovarianceMatrix cov_matrix(const ProcessSpec& spec, const TimeGrid& grid);

}  // namespace smfbm
