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

namespace smfbm {

// Hurst index, 0 < H < 1. Validated once at construction so the covariance
// kernels stay branch-light.
class HurstParam {
 public:
  explicit HurstParam(double h);

  double value() const { return h_; }
  // Exponent 2H; nearly every formula consumes this form.
  double two_h() const { return 2.0 * h_; }
  bool is_half() const { return h_ == 0.5; }

 private:
  double h_;
};

// Mixing weights (a, b) of the Brownian and sub-fractional components.
// The only constraint is (a, b) != (0, 0); negative weights are allowed.
struct MixCoeffs {
  double a;
  double b;

  MixCoeffs(double a_, double b_);

  double a2() const { return a * a; }
  double b2() const { return b * b; }
};

enum class ProcessKind { bm, fbm, sfbm, mfbm, smfbm };

std::string to_string(ProcessKind kind);
ProcessKind process_kind_from_string(const std::string& name);

// Process family tag plus parameters; the single source of truth for which
// covariance kernel applies. bm pins H = 1/2 and (a, b) = (1, 0); fbm and
// sfbm pin (a, b) = (0, 1).
class ProcessSpec {
 public:
  static ProcessSpec bm();
  static ProcessSpec fbm(HurstParam h);
  static ProcessSpec sfbm(HurstParam h);
  static ProcessSpec mfbm(MixCoeffs c, HurstParam h);
  static ProcessSpec smfbm(MixCoeffs c, HurstParam h);
  // Dispatch on kind; coeffs are ignored (and normalized) for bm/fbm/sfbm.
  static ProcessSpec make(ProcessKind kind, MixCoeffs c, HurstParam h);

  ProcessKind kind() const { return kind_; }
  const MixCoeffs& coeffs() const { return coeffs_; }
  const HurstParam& hurst() const { return hurst_; }

  // Covariance of the process at times s, t >= 0.
  double covariance(double s, double t) const;
  double variance(double t) const;

 private:
  ProcessSpec(ProcessKind k, MixCoeffs c, HurstParam h);

  ProcessKind kind_;
  MixCoeffs coeffs_;
  HurstParam hurst_;
};

// Strictly increasing nonnegative time points.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);

  // count intervals => count + 1 points, endpoints included exactly.
  static TimeGrid uniform(double start, double end, int intervals);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }
  bool starts_at_zero() const { return points_.front() == 0.0; }

  // Dilated grid {h * t_i}, h > 0.
  TimeGrid scaled(double h) const;

  // True when the grid is {0, T/n, 2T/n, ..., T} up to tiny rounding.
  bool is_uniform_from_zero(double rel_tol = 1e-12) const;

 private:
  std::vector<double> points_;
};

}  // namespace smfbm
