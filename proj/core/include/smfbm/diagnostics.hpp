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

#include <string>
#include <vector>

#include "smfbm/process.hpp"

namespace smfbm {

// Residual of the Gaussian-Markov covariance factorization condition at
// 0 < s < t < u:  Cov(S_s,S_u) Cov(S_t,S_t) - Cov(S_s,S_t) Cov(S_t,S_u).
// Identically zero for Brownian motion; nonzero whenever the process has a
// fractional component with H != 1/2.
double markov_defect(double s, double t, double u, const ProcessSpec& spec);

// Expected quadratic variation over the uniform n-partition of [0, T]:
//   A_n = a^2 T + b^2 T^{2H} n^{1-2H}
//       + 2^{2H} b^2 T^{2H} n^{-2H} sum_{j=1}^n [ ((2j-1)/2)^{2H} - (j^{2H}+(j-1)^{2H})/2 ].
// Agrees with the brute-force sum of increment second moments.
double expected_qv(double T, long n, const MixCoeffs& c, HurstParam h);

enum class QvLimitClass { diverges, finite_ab, finite_a };

std::string to_string(QvLimitClass c);

// n -> infinity behavior of A_n: diverges for H < 1/2 with b != 0; constant
// (a^2+b^2) T at H = 1/2 or b = 0; converges to a^2 T for H > 1/2.
QvLimitClass qv_limit_class(const MixCoeffs& c, HurstParam h);

struct QvReport {
  double horizon = 0.0;
  std::vector<long> n_values;
  std::vector<double> a_n;
  QvLimitClass limit_class = QvLimitClass::finite_ab;
};

QvReport qv_report(double T, const std::vector<long>& n_values, const MixCoeffs& c,
                   HurstParam h);

// Ratio u_j / v_j of the adjacent-increment covariance coefficient to the
// increment standard-deviation coefficient on the uniform n-partition:
//   u_j = 2^{2H}(2 j^{2H} + 1) - 2 - (2j+1)^{2H} - (2j-1)^{2H}
//   v_j = sqrt( a^2 T + b^2 T^{2H} (1 + (2j-1)^{2H} - 2^{2H-1}(j^{2H}+(j-1)^{2H})) ).
// Converges to (2^{2H} - 2) / sqrt(a^2 T + b^2 T^{2H}) as j grows.
double uv_ratio(long j, double T, const MixCoeffs& c, HurstParam h);

struct QuasiMartSum {
  double i_n = 0.0;                // sum of Cov(D_{j+1}, D_j) / sqrt(Var D_j)
  std::vector<double> uv_terms;    // u_j / v_j for j = 1 .. n-1
};

// Lower-bound statistic for the quasi-martingale variation on the uniform
// n-partition of [0, T]. Grows like n^{3/2 - 2H} for 1/2 < H < 3/4; requires
// a fractional component (b != 0).
QuasiMartSum quasi_mart_sum(double T, long n, const MixCoeffs& c, HurstParam h);

struct CondL2Sum {
  double total = 0.0;            // sum over j of || E(D_{j+1} | D_1..D_j) ||_2
  std::vector<double> per_j;     // the individual L2 norms, j = 1 .. n-1
  double lambda_max = 0.0;       // largest eigenvalue of the full increment covariance
  double lambda_bound = 0.0;     // a^2 T/n + (5/(2n)) b^2 T^{3/2}  (H = 3/4 envelope)
  bool lambda_max_bound_ok = false;
};

// Conditional-L2 sums of increments on the uniform n-partition: per_j[j-1] is
// sqrt(m_j^T A_j^{-1} m_j) where A_j is the covariance of the first j
// increments and m_j the cross covariance with increment j+1. Solved through
// an incrementally extended Cholesky factor, O(n^3) total. The eigenvalue
// bound fields are meaningful at H = 3/4, where the analytic envelope holds.
// Throws numerical_error naming the offending j if A_j is numerically
// singular; b must be nonzero; n is capped (O(n^3) cost).
CondL2Sum cond_l2_sum(double T, long n, const MixCoeffs& c, HurstParam h,
                      long cap = 1024);

// Analytic floor for per_j at H = 3/4 (zero at j = 1):
//   sqrt( beta / n^2 * ( ln(2j-1) + 2 acos((j-1)/j) - pi ) ),
//   beta = 9 T^3 b^4 / (32 T (2a^2 + 5 b^2 sqrt(T))).
double cond_l2_term_floor(long j, long n, double T, const MixCoeffs& c);

struct CrossTermGap {
  double f1 = 0.0;           // near-diagonal second difference of x^{3/2}
  double f2 = 0.0;           // far (reflected) second difference
  double lower_bound = 0.0;  // 3/4 ((j-k+1)^{-1/2} - (j+k-1)^{-1/2})
};

// Coefficient gap driving the conditional-L2 floor at H = 3/4: both second
// differences are nonnegative and f1 - f2 >= lower_bound >= 0 for 1 <= k <= j.
CrossTermGap cross_term_gap(long j, long k);

// Residual between the fractional part of the increment second moment and its
// stationary-style benchmark, as a function of the lag x = t - s at base
// point s > 0. Vanishes at x = 0, is negative and decreasing for H < 1/2,
// positive and increasing for H > 1/2.
double stationarity_gap(double x, double s, HurstParam h);

struct MixedPartialProbe {
  std::vector<double> estimates;  // band-excluded L2 mass per level
  bool converged = false;         // last two estimates within 1% relative
};

// Square-integrability probe of the mixed partial derivative of the scaled
// sub-fractional covariance (b/a xi^H). Level k integrates
//   ( (b^2/a^2) H(2H-1) ( |t-s|^{2H-2} - (s+t)^{2H-2} ) )^2
// over [0,T]^2 minus the diagonal band |t-s| <= T 2^{-(k+3)}. The band
// integral is reduced to a 1-D integral in the lag variable (the inner
// integral has a closed form) and evaluated on geometric Gauss panels, so
// each level is exact to near machine precision and the refinement signal is
// purely the shrinking band. Saturation of the estimates indicates a square
// integrable derivative (H > 3/4); monotone growth without saturation
// indicates divergence (1/2 < H <= 3/4); H = 1/2 gives identically zero.
// Requires a != 0 and levels >= 3.
MixedPartialProbe l2_mixed_partial_probe(double T, const MixCoeffs& c, HurstParam h,
                                         int levels);

enum class SemimartRegime {
  pure_bm,                    // b = 0: scaled Brownian motion
  brownian_h_half,            // H = 1/2
  rough_not_weak_semimart,    // H < 1/2
  intermediate_not_quasimart, // 1/2 < H <= 3/4
  smooth_semimart,            // H > 3/4
};

std::string to_string(SemimartRegime r);

struct SemimartVerdict {
  bool is_semimartingale = false;
  SemimartRegime regime = SemimartRegime::brownian_h_half;
  std::vector<std::string> citations;  // the supporting analytic facts
};

// Classification: semimartingale iff b = 0 or H = 1/2 or H > 3/4. H = 3/4
// itself fails the quasi-martingale property and is excluded.
SemimartVerdict semimart_verdict(const MixCoeffs& c, HurstParam h);

}  // namespace smfbm
