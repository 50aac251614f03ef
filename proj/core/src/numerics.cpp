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

#include "smfbm/numerics.hpp"

#include <cassert>
#include <stdexcept>

namespace smfbm::num {

double pow_gap(double x, double y, double p) {
  assert(x >= 0.0 && y >= 0.0);
  if (x == y) return 0.0;
  if (p == 1.0) return x - y;
  if (y == 0.0) return pow_abs(x, p);
  if (x == 0.0) return -pow_abs(y, p);
  if (x > 0.5 * y && x < 2.0 * y) {
    return std::pow(y, p) * std::expm1(p * std::log1p((x - y) / y));
  }
  return std::pow(x, p) - std::pow(y, p);
}

double second_diff(double x, double h, double p) {
  assert(x >= h && h >= 0.0);
  if (h == 0.0 || p == 1.0) return 0.0;
  if (x == h) return pow_abs(2.0 * h, p) - 2.0 * pow_abs(h, p);
  const double u = h / x;
  return std::pow(x, p) *
         (std::expm1(p * std::log1p(u)) + std::expm1(p * std::log1p(-u)));
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_linear: need two samples of equal length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::domain_error("fit_loglog: abscissae must be positive");
    lx[i] = std::log(x[i]);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::domain_error("fit_loglog: ordinates must be positive");
    ly[i] = std::log(y[i]);
  }
  return fit_linear(lx, ly);
}

}  // namespace smfbm::num
