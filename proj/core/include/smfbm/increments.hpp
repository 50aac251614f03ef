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

#include "smfbm/process.hpp"

namespace smfbm {

// Two increments of common lag h over [s, s+h] and [t, t+h], non-overlapping:
// 0 <= s <= t and 0 < h <= t - s. Touching windows (h == t - s) are allowed.
struct IncrementWindow {
  double s;
  double t;
  double h;

  IncrementWindow(double s_, double t_, double h_);
};

// Ordered interval pair [u, v], [s, t] with 0 <= u < v <= s < t.
struct IntervalPair {
  double u;
  double v;
  double s;
  double t;

  IntervalPair(double u_, double v_, double s_, double t_);
};

// E (S_t - S_s)^2 for 0 <= s <= t:
//   a^2 (t-s) + b^2 ( -2^{2H-1}(t^{2H}+s^{2H}) + (t+s)^{2H} + (t-s)^{2H} ).
double incr_second_moment(double s, double t, const MixCoeffs& c, HurstParam h);

struct IncrBounds {
  double lower;
  double upper;
};

// Stationary-style envelope of the increment second moment:
//   a^2 (t-s) + b^2 gamma (t-s)^{2H}  <=  E(S_t - S_s)^2  <=  a^2 (t-s) + b^2 nu (t-s)^{2H}
// with gamma = 2 - 2^{2H-1} above H = 1/2 (1 below) and nu the mirror case.
IncrBounds incr_bounds(double s, double t, const MixCoeffs& c, HurstParam h);

// Numerator combination of the increment correlation: the second difference
// at lag t-s minus the reflected second difference at t+s+h. Its sign is the
// sign of H - 1/2.
double incr_gamma(double s, double t, double h, HurstParam hurst);

// Denominator combination: 2 E(xi^H increment)^2 at window [s, s+h], i.e.
//   -2^{2H}((s+h)^{2H} + s^{2H}) + 2 (2s+h)^{2H} + 2 h^{2H}.
double incr_alpha(double s, double h, HurstParam hurst);

struct IncrementCorrelation {
  double value = 0.0;
  // b == 0 has no fractional component; disjoint Brownian increments are
  // independent, so the correlation is reported as 0 and flagged here.
  bool pure_bm_limit = false;
};

// Correlation of the two window increments,
//   gamma / sqrt( (2 a^2/b^2 h + alpha(s,h)) (2 a^2/b^2 h + alpha(t,h)) ).
IncrementCorrelation incr_corr(const IncrementWindow& w, const MixCoeffs& c, HurstParam h);

// Increment covariance of the mixed process over [u,v] x [s,t]:
//   b^2/2 ( (t-u)^{2H} + (s-v)^{2H} - (t-v)^{2H} - (s-u)^{2H} ).
double nonoverlap_cov_mfbm(const IntervalPair& p, const MixCoeffs& c, HurstParam h);

// Increment covariance of the sub-mixed process over [u,v] x [s,t] (eight
// power terms, evaluated as four paired differences to control cancellation).
double nonoverlap_cov_smfbm(const IntervalPair& p, const MixCoeffs& c, HurstParam h);

// Gap between the two covariances above (sub-mixed minus mixed):
//   b^2/2 ( (t+u)^{2H} - (t+v)^{2H} + (s+v)^{2H} - (s+u)^{2H} ).
// Strictly negative for H > 1/2, positive for H < 1/2, zero at H = 1/2.
double cov_gap(const IntervalPair& p, const MixCoeffs& c, HurstParam h);

// Covariance of unit-lag increments over [p, p+1] and [p+n, p+n+1]. Decays
// like n^{2H-3}, hence absolutely summable in n for every H.
double lag_cov(long p, long n, const MixCoeffs& c, HurstParam h);

struct AdjacentCorr {
  double rho_smfbm;
  double rho_mfbm;
};

// Correlations of increments over the adjacent intervals [u, u+r] and
// [u+r, u+2r] for the sub-mixed and mixed processes. The sub-mixed one is
// never larger in magnitude. H = 1/2 returns (0, 0).
AdjacentCorr adjacent_corr_pair(double u, double r, const MixCoeffs& c, HurstParam h);

}  // namespace smfbm
