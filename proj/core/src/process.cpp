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

#include "smfbm/process.hpp"

#include <cmath>
#include <stdexcept>

#include "smfbm/kernels.hpp"

namespace smfbm {

HurstParam::HurstParam(double h) : h_(h) {
  if (!(h > 0.0) || !(h < 1.0)) {
    throw std::domain_error("Hurst index must satisfy 0 < H < 1, got " + std::to_string(h));
  }
}

MixCoeffs::MixCoeffs(double a_, double b_) : a(a_), b(b_) {
  if (a == 0.0 && b == 0.0) {
    throw std::domain_error("mix coefficients (a,b) must not be (0,0)");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("mix coefficients must be finite");
  }
}

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::bm: return "bm";
    case ProcessKind::fbm: return "fbm";
    case ProcessKind::sfbm: return "sfbm";
    case ProcessKind::mfbm: return "mfbm";
    case ProcessKind::smfbm: return "smfbm";
  }
  return "unknown";
}

ProcessKind process_kind_from_string(const std::string& name) {
  if (name == "bm") return ProcessKind::bm;
  if (name == "fbm") return ProcessKind::fbm;
  if (name == "sfbm") return ProcessKind::sfbm;
  if (name == "mfbm") return ProcessKind::mfbm;
  if (name == "smfbm") return ProcessKind::smfbm;
  throw std::invalid_argument("unknown process kind: " + name);
}

ProcessSpec::ProcessSpec(ProcessKind k, MixCoeffs c, HurstParam h)
    : kind_(k), coeffs_(c), hurst_(h) {}

ProcessSpec ProcessSpec::bm() {
  return ProcessSpec(ProcessKind::bm, MixCoeffs(1.0, 0.0), HurstParam(0.5));
}

ProcessSpec ProcessSpec::fbm(HurstParam h) {
  return ProcessSpec(ProcessKind::fbm, MixCoeffs(0.0, 1.0), h);
}

ProcessSpec ProcessSpec::sfbm(HurstParam h) {
  return ProcessSpec(ProcessKind::sfbm, MixCoeffs(0.0, 1.0), h);
}

ProcessSpec ProcessSpec::mfbm(MixCoeffs c, HurstParam h) {
  return ProcessSpec(ProcessKind::mfbm, c, h);
}

ProcessSpec ProcessSpec::smfbm(MixCoeffs c, HurstParam h) {
  return ProcessSpec(ProcessKind::smfbm, c, h);
}

ProcessSpec ProcessSpec::make(ProcessKind kind, MixCoeffs c, HurstParam h) {
  switch (kind) {
    case ProcessKind::bm: return bm();
    case ProcessKind::fbm: return fbm(h);
    case ProcessKind::sfbm: return sfbm(h);
    case ProcessKind::mfbm: return mfbm(c, h);
    case ProcessKind::smfbm: return smfbm(c, h);
  }
  throw std::invalid_argument("unknown process kind");
}

double ProcessSpec::covariance(double s, double t) const {
  switch (kind_) {
    case ProcessKind::bm: return fbm_cov(s, t, hurst_);
    case ProcessKind::fbm: return fbm_cov(s, t, hurst_);
    case ProcessKind::sfbm: return sfbm_cov(s, t, hurst_);
    case ProcessKind::mfbm: return mfbm_cov(s, t, coeffs_, hurst_);
    case ProcessKind::smfbm: return smfbm_cov(s, t, coeffs_, hurst_);
  }
  throw std::logic_error("unreachable");
}

double ProcessSpec::variance(double t) const {
  switch (kind_) {
    case ProcessKind::bm: return fbm_cov(t, t, hurst_);
    case ProcessKind::fbm: return fbm_cov(t, t, hurst_);
    case ProcessKind::sfbm: return sfbm_cov(t, t, hurst_);
    case ProcessKind::mfbm: return mfbm_cov(t, t, coeffs_, hurst_);
    case ProcessKind::smfbm: return smfbm_var(t, coeffs_, hurst_);
  }
  throw std::logic_error("unreachable");
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("time grid must contain at least one point");
  }
  if (!(points_.front() >= 0.0)) {
    throw std::invalid_argument("time grid points must be nonnegative");
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_[i] < points_[i + 1])) {
      throw std::invalid_argument("time grid points must be strictly increasing");
    }
  }
  if (!std::isfinite(points_.back())) {
    throw std::invalid_argument("time grid points must be finite");
  }
}

TimeGrid TimeGrid::uniform(double start, double end, int intervals) {
  if (intervals < 1) throw std::invalid_argument("grid needs at least one interval");
  if (!(start >= 0.0) || !(end > start)) {
    throw std::invalid_argument("grid requires 0 <= start < end");
  }
  std::vector<double> pts(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    pts[static_cast<std::size_t>(i)] = start + (end - start) * static_cast<double>(i) / intervals;
  }
  pts.front() = start;
  pts.back() = end;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::scaled(double h) const {
  if (!(h > 0.0)) throw std::domain_error("grid dilation factor must be positive");
  std::vector<double> pts(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) pts[i] = h * points_[i];
  return TimeGrid(std::move(pts));
}

bool TimeGrid::is_uniform_from_zero(double rel_tol) const {
  if (points_.size() < 2 || points_.front() != 0.0) return false;
  const double span = points_.back();
  const double step = span / static_cast<double>(points_.size() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(points_[i] - step * static_cast<double>(i)) > rel_tol * span) return false;
  }
  return true;
}

}  // namespace smfbm
