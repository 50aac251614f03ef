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

#include "smfbm/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace smfbm {

namespace {

std::size_t grid_index_of(const TimeGrid& grid, double t) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  }
  throw std::invalid_argument("window endpoint " + std::to_string(t) +
                              " is not a grid point (no interpolation)");
}

}  // namespace

EstimateWithError empirical_cov(const PathEnsemble& e, std::size_t i, std::size_t j) {
  const auto n_paths = e.values.rows();
  const auto n_cols = static_cast<std::size_t>(e.values.cols());
  if (i >= n_cols || j >= n_cols) {
    throw std::invalid_argument("empirical_cov: grid index out of range");
  }
  if (n_paths < 2) throw std::invalid_argument("empirical_cov requires n_paths >= 2");

  double mean = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    mean += e.values(p, static_cast<Eigen::Index>(i)) *
            e.values(p, static_cast<Eigen::Index>(j));
  }
  mean /= static_cast<double>(n_paths);
  double var = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    const double prod = e.values(p, static_cast<Eigen::Index>(i)) *
                        e.values(p, static_cast<Eigen::Index>(j));
    var += (prod - mean) * (prod - mean);
  }
  var /= static_cast<double>(n_paths - 1);
  return EstimateWithError{mean, std::sqrt(var / static_cast<double>(n_paths)),
                           static_cast<long>(n_paths)};
}

EstimateWithError empirical_incr_corr(const PathEnsemble& e, const IncrementWindow& w) {
  const auto n_paths = e.values.rows();
  if (n_paths < 4) throw std::invalid_argument("empirical_incr_corr requires n_paths >= 4");
  const auto i_s = static_cast<Eigen::Index>(grid_index_of(e.config.grid, w.s));
  const auto i_sh = static_cast<Eigen::Index>(grid_index_of(e.config.grid, w.s + w.h));
  const auto i_t = static_cast<Eigen::Index>(grid_index_of(e.config.grid, w.t));
  const auto i_th = static_cast<Eigen::Index>(grid_index_of(e.config.grid, w.t + w.h));

  double mx = 0.0, my = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    mx += e.values(p, i_sh) - e.values(p, i_s);
    my += e.values(p, i_th) - e.values(p, i_t);
  }
  mx /= static_cast<double>(n_paths);
  my /= static_cast<double>(n_paths);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    const double x = e.values(p, i_sh) - e.values(p, i_s) - mx;
    const double y = e.values(p, i_th) - e.values(p, i_t) - my;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("empirical_incr_corr: degenerate increments");
  }
  const double rho = sxy / std::sqrt(sxx * syy);
  return EstimateWithError{rho, 1.0 / std::sqrt(static_cast<double>(n_paths - 3)),
                           static_cast<long>(n_paths)};
}

EstimateWithError realized_qv(const PathEnsemble& e) {
  if (!e.config.grid.is_uniform_from_zero()) {
    throw std::invalid_argument("realized_qv requires a uniform grid starting at 0");
  }
  const auto n_paths = e.values.rows();
  const auto cols = e.values.cols();
  if (n_paths < 2) throw std::invalid_argument("realized_qv requires n_paths >= 2");

  double mean = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    double qv = 0.0;
    for (Eigen::Index k = 0; k + 1 < cols; ++k) {
      const double d = e.values(p, k + 1) - e.values(p, k);
      qv += d * d;
    }
    mean += qv;
  }
  mean /= static_cast<double>(n_paths);
  double var = 0.0;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    double qv = 0.0;
    for (Eigen::Index k = 0; k + 1 < cols; ++k) {
      const double d = e.values(p, k + 1) - e.values(p, k);
      qv += d * d;
    }
    var += (qv - mean) * (qv - mean);
  }
  var /= static_cast<double>(n_paths - 1);
  return EstimateWithError{mean, std::sqrt(var / static_cast<double>(n_paths)),
                           static_cast<long>(n_paths)};
}

}  // namespace smfbm
