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

#include "smfbm/increments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smfbm/kernels.hpp"
#include "smfbm/numerics.hpp"

namespace smfbm {

using num::pow_abs;
using num::pow_gap;
using num::second_diff;

IncrementWindow::IncrementWindow(double s_, double t_, double h_) : s(s_), t(t_), h(h_) {
  if (!(s >= 0.0) || !(t >= s)) {
    throw std::domain_error("increment window requires 0 <= s <= t");
  }
  if (!(h > 0.0) || !(h <= t - s)) {
    throw std::domain_error("increment window requires 0 < h <= t - s");
  }
}

IntervalPair::IntervalPair(double u_, double v_, double s_, double t_)
    : u(u_), v(v_), s(s_), t(t_) {
  if (!(u >= 0.0 && u < v && v <= s && s < t)) {
    throw std::domain_error("interval pair requires 0 <= u < v <= s < t");
  }
}

double incr_second_moment(double s, double t, const MixCoeffs& c, HurstParam h) {
  if (!(s >= 0.0) || !(t >= s)) {
    throw std::domain_error("increment second moment requires 0 <= s <= t");
  }
  const double p = h.two_h();
  if (p == 1.0) return (c.a2() + c.b2()) * (t - s);
  // (t+s)^p - 2^{p-1}(t^p + s^p)  ==  -2^{p-1} second_diff((s+t)/2, (t-s)/2)
  const double frac =
      pow_abs(t - s, p) -
      std::exp2(p - 1.0) * second_diff(0.5 * (s + t), 0.5 * (t - s), p);
  return c.a2() * (t - s) + c.b2() * frac;
}

IncrBounds incr_bounds(double s, double t, const MixCoeffs& c, HurstParam h) {
  if (!(s >= 0.0) || !(t >= s)) {
    throw std::domain_error("increment bounds require 0 <= s <= t");
  }
  const double p = h.two_h();
  const double base = c.a2() * (t - s);
  const double frac = c.b2() * pow_abs(t - s, p);
  const double squeeze = 2.0 - std::exp2(p - 1.0);  // in (0,1) for H>1/2, (1,2) for H<1/2
  IncrBounds b{};
  if (h.value() > 0.5) {
    b.lower = base + squeeze * frac;
    b.upper = base + frac;
  } else if (h.value() < 0.5) {
    b.lower = base + frac;
    b.upper = base + squeeze * frac;
  } else {
    b.lower = base + frac;
    b.upper = b.lower;
  }
  return b;
}

double incr_gamma(double s, double t, double h, HurstParam hurst) {
  IncrementWindow w(s, t, h);  // validates
  const double p = hurst.two_h();
  return second_diff(t - s, h, p) - second_diff(t + s + h, h, p);
}

double incr_alpha(double s, double h, HurstParam hurst) {
  if (!(s >= 0.0)) throw std::domain_error("incr_alpha requires s >= 0");
  if (!(h > 0.0)) throw std::domain_error("incr_alpha requires h > 0");
  const double p = hurst.two_h();
  // 2 h^p - 2^p ( (s+h)^p + s^p - 2 ((2s+h)/2)^p )
  return 2.0 * pow_abs(h, p) -
         std::exp2(p) * second_diff(s + 0.5 * h, 0.5 * h, p);
}

IncrementCorrelation incr_corr(const IncrementWindow& w, const MixCoeffs& c, HurstParam h) {
  IncrementCorrelation out;
  if (c.b == 0.0) {
    out.pure_bm_limit = true;
    return out;
  }
  const double g = incr_gamma(w.s, w.t, w.h, h);
  const double ratio = 2.0 * c.a2() / c.b2() * w.h;
  const double d = std::sqrt((ratio + incr_alpha(w.s, w.h, h)) *
                             (ratio + incr_alpha(w.t, w.h, h)));
  out.value = std::clamp(g / d, -1.0, 1.0);
  return out;
}

double nonoverlap_cov_mfbm(const IntervalPair& p, const MixCoeffs& c, HurstParam h) {
  const double e = h.two_h();
  return 0.5 * c.b2() *
         (pow_gap(p.t - p.u, p.t - p.v, e) + pow_gap(p.s - p.v, p.s - p.u, e));
}

double nonoverlap_cov_smfbm(const IntervalPair& p, const MixCoeffs& c, HurstParam h) {
  const double e = h.two_h();
  return 0.5 * c.b2() *
         (pow_gap(p.t + p.u, p.t + p.v, e) + pow_gap(p.t - p.u, p.t - p.v, e) +
          pow_gap(p.s + p.v, p.s + p.u, e) + pow_gap(p.s - p.v, p.s - p.u, e));
}

double cov_gap(const IntervalPair& p, const MixCoeffs& c, HurstParam h) {
  const double e = h.two_h();
  return 0.5 * c.b2() *
         (pow_gap(p.t + p.u, p.t + p.v, e) + pow_gap(p.s + p.v, p.s + p.u, e));
}

double lag_cov(long p, long n, const MixCoeffs& c, HurstParam h) {
  if (p < 0) throw std::domain_error("lag_cov requires p >= 0");
  if (n < 1) throw std::domain_error("lag_cov requires n >= 1");
  const double e = h.two_h();
  const double near = second_diff(static_cast<double>(n), 1.0, e);
  const double far = second_diff(static_cast<double>(2 * p + n + 1), 1.0, e);
  return 0.5 * c.b2() * (near - far);
}

AdjacentCorr adjacent_corr_pair(double u, double r, const MixCoeffs& c, HurstParam h) {
  if (!(u >= 0.0)) throw std::domain_error("adjacent_corr_pair requires u >= 0");
  if (!(r > 0.0)) throw std::domain_error("adjacent_corr_pair requires r > 0");
  if (h.is_half() || c.b == 0.0) return AdjacentCorr{0.0, 0.0};

  const double p = h.two_h();
  const double rp = pow_abs(r, p);
  const double rho_m = c.b2() * (std::exp2(p - 1.0) - 1.0) * rp / (c.a2() * r + c.b2() * rp);

  const IntervalPair pair(u, u + r, u + r, u + 2.0 * r);
  const double cov = nonoverlap_cov_smfbm(pair, c, h);
  const double v1 = incr_second_moment(u, u + r, c, h);
  const double v2 = incr_second_moment(u + r, u + 2.0 * r, c, h);
  const double rho_s = cov / std::sqrt(v1 * v2);
  return AdjacentCorr{std::clamp(rho_s, -1.0, 1.0), std::clamp(rho_m, -1.0, 1.0)};
}

}  // namespace smfbm
