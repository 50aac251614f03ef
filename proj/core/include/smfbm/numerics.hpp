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

#include <cmath>
#include <cstddef>
#include <vector>

namespace smfbm::num {

// |x|^p with 0^p defined as 0 for every exponent p in (0, 2). Grids start at
// t = 0, so the continuous extension at the origin is load-bearing.
inline double pow_abs(double x, double p) {
  if (x == 0.0) return 0.0;
  if (p == 1.0) return std::abs(x);
  return std::pow(std::abs(x), p);
}

// x^p - y^p for x, y >= 0.
//
// Every covariance comparison in this library ends up subtracting two nearby
// powers; doing that naively at x ~ y ~ 1e4 wipes out most of the mantissa.
// When the arguments are within a factor of two of each other the difference
// is routed through expm1/log1p, which keeps full relative precision (the
// subtraction x - y is exact by Sterbenz in that regime).
double pow_gap(double x, double y, double p);

// Central second difference (x+h)^p - 2 x^p + (x-h)^p for x >= h >= 0.
//
// This is the basic building block of the increment covariances: written
// directly it loses ~(x/h)^2 relative digits, while the expm1 form below
// loses only ~(x/h). That is the difference between garbage and ~1e-10
// relative accuracy at x/h = 1e6, which the lag-covariance asymptotics need.
// p == 1 returns exactly 0 (second differences of a linear function vanish).
double second_diff(double x, double h, double p);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares line through (log x_i, log y_i). All inputs must be positive;
// used for the dyadic-ladder growth-rate fits.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares line through (x_i, y_i).
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace smfbm::num
