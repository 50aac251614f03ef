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

#include "smfbm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smfbm/numerics.hpp"

namespace smfbm {

namespace {

void require_nonnegative_times(double s, double t) {
  if (s < 0.0 || t < 0.0) {
    throw std::domain_error("kernel time arguments must be nonnegative");
  }
}

}  // namespace

double fbm_cov(double s, double t, HurstParam h) {
  const double p = h.two_h();
  if (p == 1.0) {
    // Brownian overlap: min of magnitudes on matching signs, zero otherwise.
    if (s == 0.0 || t == 0.0) return 0.0;
    if ((s > 0.0) != (t > 0.0)) return 0.0;
    return std::min(std::abs(s), std::abs(t));
  }
  return 0.5 * (num::pow_abs(t, p) + num::pow_abs(s, p) - num::pow_abs(t - s, p));
}

double sfbm_cov(double s, double t, HurstParam h) {
  require_nonnegative_times(s, t);
  const double p = h.two_h();
  if (p == 1.0) return std::min(s, t);
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  // s^p + t^p - ((s+t)^p + (t-s)^p)/2  ==  lo^p - second_diff(hi, lo, p)/2
  return num::pow_abs(lo, p) - 0.5 * num::second_diff(hi, lo, p);
}

double mfbm_cov(double s, double t, const MixCoeffs& c, HurstParam h) {
  require_nonnegative_times(s, t);
  if (h.is_half()) return (c.a2() + c.b2()) * std::min(s, t);
  return c.a2() * std::min(s, t) + c.b2() * fbm_cov(s, t, h);
}

double smfbm_cov(double s, double t, const MixCoeffs& c, HurstParam h) {
  require_nonnegative_times(s, t);
  return c.a2() * std::min(s, t) + c.b2() * sfbm_cov(s, t, h);
}

double smfbm_var(double t, const MixCoeffs& c, HurstParam h) {
  if (t < 0.0) throw std::domain_error("variance time argument must be nonnegative");
  const double p = h.two_h();
  if (p == 1.0) return (c.a2() + c.b2()) * t;
  return c.a2() * t + c.b2() * (2.0 - std::exp2(p - 1.0)) * num::pow_abs(t, p);
}

MixCoeffs rescale_params(const MixCoeffs& c, HurstParam h_index, double h) {
  if (!(h > 0.0)) throw std::domain_error("time dilation factor must be positive");
  return MixCoeffs(c.a * std::sqrt(h), c.b * std::pow(h, h_index.value()));
}

CovarianceMatrix cov_matrix(const ProcessSpec& spec, const TimeGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = spec.covariance(grid[static_cast<std::size_t>(i)],
                                       grid[static_cast<std::size_t>(j)]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return CovarianceMatrix{grid, std::move(m), 0.0};
}

}  // namespace smfbm
