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

#include "smfbm/diagnostics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smfbm/errors.hpp"
#include "smfbm/increments.hpp"
#include "smfbm/kernels.hpp"
#include "smfbm/numerics.hpp"

namespace smfbm {

using num::pow_abs;
using num::second_diff;

double markov_defect(double s, double t, double u, const ProcessSpec& spec) {
  if (!(0.0 < s && s < t && t < u)) {
    throw std::domain_error("markov_defect requires 0 < s < t < u");
  }
  const double k_su = spec.covariance(s, u);
  const double k_tt = spec.covariance(t, t);
  const double k_st = spec.covariance(s, t);
  const double k_tu = spec.covariance(t, u);
  return k_su * k_tt - k_st * k_tu;
}

double expected_qv(double T, long n, const MixCoeffs& c, HurstParam h) {
  if (!(T > 0.0)) throw std::domain_error("expected_qv requires T > 0");
  if (n < 1) throw std::domain_error("expected_qv requires n >= 1");
  const double p = h.two_h();
  if (p == 1.0 || c.b == 0.0) {
    return (c.a2() + c.b2()) * T;  // constant in n; equals a^2 T when b = 0
  }
  double sum = 0.0;
  for (long j = 1; j <= n; ++j) {
    sum += -0.5 * second_diff(static_cast<double>(j) - 0.5, 0.5, p);
  }
  const double tp = pow_abs(T, p);
  const double nd = static_cast<double>(n);
  return c.a2() * T + c.b2() * tp * std::pow(nd, 1.0 - p) +
         std::exp2(p) * c.b2() * tp * std::pow(nd, -p) * sum;
}

std::string to_string(QvLimitClass cls) {
  switch (cls) {
    case QvLimitClass::diverges: return "diverges";
    case QvLimitClass::finite_ab: return "finite_ab";
    case QvLimitClass::finite_a: return "finite_a";
  }
  return "unknown";
}

QvLimitClass qv_limit_class(const MixCoeffs& c, HurstParam h) {
  if (c.b == 0.0 || h.is_half()) return QvLimitClass::finite_ab;
  if (h.value() < 0.5) return QvLimitClass::diverges;
  return QvLimitClass::finite_a;
}

QvReport qv_report(double T, const std::vector<long>& n_values, const MixCoeffs& c,
                   HurstParam h) {
  QvReport r;
  r.horizon = T;
  r.n_values = n_values;
  r.a_n.reserve(n_values.size());
  for (long n : n_values) r.a_n.push_back(expected_qv(T, n, c, h));
  r.limit_class = qv_limit_class(c, h);
  return r;
}

namespace {

// u_j = 2^{2H}(2 j^{2H}+1) - 2 - (2j+1)^{2H} - (2j-1)^{2H}; the j^{2H} terms
// cancel exactly against the central second difference at 2j.
double u_coeff(long j, double p) {
  return std::exp2(p) - 2.0 - second_diff(2.0 * static_cast<double>(j), 1.0, p);
}

// w_j = 1 + (2j-1)^{2H} - 2^{2H-1}(j^{2H} + (j-1)^{2H}); equals the variance
// of the unit-lag sub-fractional increment ending at j.
double w_coeff(long j, double p) {
  return 1.0 - std::exp2(p - 1.0) * second_diff(static_cast<double>(j) - 0.5, 0.5, p);
}

}  // namespace

double uv_ratio(long j, double T, const MixCoeffs& c, HurstParam h) {
  if (j < 1) throw std::domain_error("uv_ratio requires j >= 1");
  if (!(T > 0.0)) throw std::domain_error("uv_ratio requires T > 0");
  if (c.b == 0.0) throw std::domain_error("uv_ratio requires b != 0");
  const double p = h.two_h();
  const double v = std::sqrt(c.a2() * T + c.b2() * pow_abs(T, p) * w_coeff(j, p));
  return u_coeff(j, p) / v;
}

QuasiMartSum quasi_mart_sum(double T, long n, const MixCoeffs& c, HurstParam h) {
  if (!(T > 0.0)) throw std::domain_error("quasi_mart_sum requires T > 0");
  if (n < 2) throw std::domain_error("quasi_mart_sum requires n >= 2");
  if (c.b == 0.0) throw std::domain_error("quasi_mart_sum requires b != 0");
  const double p = h.two_h();
  const double tp = pow_abs(T, p);
  const double nd = static_cast<double>(n);
  const double cov_scale = 0.5 * c.b2() * tp * std::pow(nd, -p);
  QuasiMartSum out;
  out.uv_terms.reserve(static_cast<std::size_t>(n - 1));
  double acc = 0.0;
  for (long j = 1; j < n; ++j) {
    const double uj = u_coeff(j, p);
    const double wj = w_coeff(j, p);
    const double vj = std::sqrt(c.a2() * T + c.b2() * tp * wj);
    out.uv_terms.push_back(uj / vj);
    const double var_j = c.a2() * T / nd + c.b2() * tp * std::pow(nd, -p) * wj;
    acc += cov_scale * uj / std::sqrt(var_j);
  }
  out.i_n = acc;
  return out;
}

CondL2Sum cond_l2_sum(double T, long n, const MixCoeffs& c, HurstParam h, long cap) {
  if (!(T > 0.0)) throw std::domain_error("cond_l2_sum requires T > 0");
  if (c.b == 0.0) throw std::domain_error("cond_l2_sum requires b != 0");
  if (n < 2) throw std::domain_error("cond_l2_sum requires n >= 2");
  if (n > cap) {
    throw std::invalid_argument("cond_l2_sum: n = " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap) +
                                " (cost grows as n^3)");
  }
  const double p = h.two_h();
  const double tau = T / static_cast<double>(n);
  const double taup = pow_abs(tau, p);
  const auto m = static_cast<Eigen::Index>(n - 1);

  // Covariance of increments i and k (1-based) on the uniform grid.
  const auto ent = [&](long i, long k) -> double {
    if (i == k) {
      const double lo = static_cast<double>(i - 1) * tau;
      return incr_second_moment(lo, lo + tau, c, h);
    }
    const long lag = std::abs(i - k);
    const long sum = i + k - 1;
    return 0.5 * c.b2() * taup *
           (second_diff(static_cast<double>(lag), 1.0, p) -
            second_diff(static_cast<double>(sum), 1.0, p));
  };

  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = i; k < m; ++k) {
      const double v = ent(i + 1, k + 1);
      a(i, k) = v;
      a(k, i) = v;
    }
  }

  CondL2Sum out;
  out.per_j.reserve(static_cast<std::size_t>(m));
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index j = 1; j <= m; ++j) {
    // Extend the Cholesky factor of the leading (j-1) block by one row.
    const Eigen::Index r = j - 1;
    Eigen::VectorXd y(r);
    if (r > 0) {
      y = L.topLeftCorner(r, r).triangularView<Eigen::Lower>().solve(
          a.row(r).head(r).transpose());
      L.row(r).head(r) = y.transpose();
    }
    const double d = a(r, r) - (r > 0 ? y.squaredNorm() : 0.0);
    if (!(d > 0.0)) {
      throw numerical_error("cond_l2_sum: increment covariance numerically singular at j = " +
                            std::to_string(j));
    }
    L(r, r) = std::sqrt(d);

    for (Eigen::Index k = 0; k < j; ++k) rhs(k) = ent(j + 1, k + 1);
    const Eigen::VectorXd z =
        L.topLeftCorner(j, j).triangularView<Eigen::Lower>().solve(rhs.head(j));
    const double norm = z.norm();
    out.per_j.push_back(norm);
    out.total += norm;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  out.lambda_max = es.eigenvalues().maxCoeff();
  out.lambda_bound = c.a2() * T / static_cast<double>(n) +
                     2.5 / static_cast<double>(n) * c.b2() * std::pow(T, 1.5);
  out.lambda_max_bound_ok = out.lambda_max <= out.lambda_bound;
  return out;
}

double cond_l2_term_floor(long j, long n, double T, const MixCoeffs& c) {
  if (j < 1) throw std::domain_error("cond_l2_term_floor requires j >= 1");
  if (n < 2) throw std::domain_error("cond_l2_term_floor requires n >= 2");
  if (!(T > 0.0)) throw std::domain_error("cond_l2_term_floor requires T > 0");
  const double alpha = 2.0 / (T * (2.0 * c.a2() + 5.0 * c.b2() * std::sqrt(T)));
  const double beta = alpha / 64.0 * 9.0 * T * T * T * c.b2() * c.b2();
  const double jd = static_cast<double>(j);
  const double arg =
      std::log(2.0 * jd - 1.0) + 2.0 * std::acos((jd - 1.0) / jd) - std::numbers::pi;
  return std::sqrt(std::max(0.0, beta * arg)) / static_cast<double>(n);
}

CrossTermGap cross_term_gap(long j, long k) {
  if (!(k >= 1 && k <= j)) throw std::domain_error("cross_term_gap requires 1 <= k <= j");
  CrossTermGap g;
  g.f1 = second_diff(static_cast<double>(j - k + 1), 1.0, 1.5);
  g.f2 = second_diff(static_cast<double>(j + k), 1.0, 1.5);
  g.lower_bound = 0.75 * (1.0 / std::sqrt(static_cast<double>(j - k + 1)) -
                          1.0 / std::sqrt(static_cast<double>(j + k - 1)));
  return g;
}

double stationarity_gap(double x, double s, HurstParam h) {
  if (!(x >= 0.0)) throw std::domain_error("stationarity_gap requires x >= 0");
  if (!(s > 0.0)) throw std::domain_error("stationarity_gap requires s > 0");
  const double p = h.two_h();
  // -2^{p-1}((x+s)^p + s^p) + (x+2s)^p == -2^{p-1} second_diff(s + x/2, x/2)
  return -std::exp2(p - 1.0) * second_diff(s + 0.5 * x, 0.5 * x, p) -
         (1.0 - std::exp2(p - 1.0)) * pow_abs(x, p);
}

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[4] = {0.18343464249564980494, 0.52553240991632898582,
                               0.79666647741362673959, 0.96028985649753623168};
constexpr double kGlWeight[4] = {0.36268378337836198297, 0.31370664587788728734,
                                 0.22238103445337447054, 0.10122853629037625915};

template <typename F>
double gauss_panel(const F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += kGlWeight[i] * (f(mid - half * kGlNode[i]) + f(mid + half * kGlNode[i]));
  }
  return acc * half;
}

}  // namespace

MixedPartialProbe l2_mixed_partial_probe(double T, const MixCoeffs& c, HurstParam h,
                                         int levels) {
  if (c.a == 0.0) throw std::domain_error("l2_mixed_partial_probe requires a != 0");
  if (!(T > 0.0)) throw std::domain_error("l2_mixed_partial_probe requires T > 0");
  if (levels < 3) throw std::domain_error("l2_mixed_partial_probe requires levels >= 3");

  MixedPartialProbe out;
  const double p = h.two_h();
  if (p == 1.0) {
    // The derivative kernel carries a factor 2H - 1.
    out.estimates.assign(static_cast<std::size_t>(levels), 0.0);
    out.converged = true;
    return out;
  }

  const double scale = (c.b2() / c.a2()) * h.value() * (p - 1.0);
  const double beta = p - 2.0;
  const bool log_case = std::abs(2.0 * beta + 1.0) < 1e-9;

  // Inner integral of (d^beta - q^beta)^2 over the anti-diagonal coordinate
  // q in [d, 2T - d], in closed form; d is the lag |t - s|.
  const auto inner = [&](double d) -> double {
    const double hi = 2.0 * T - d;
    const double t1 = std::pow(d, 2.0 * beta) * (hi - d);
    const double t2 = -2.0 * std::pow(d, beta) *
                      num::pow_gap(hi, d, beta + 1.0) / (beta + 1.0);
    const double t3 = log_case ? std::log(hi / d)
                               : num::pow_gap(hi, d, 2.0 * beta + 1.0) / (2.0 * beta + 1.0);
    return t1 + t2 + t3;
  };

  out.estimates.reserve(static_cast<std::size_t>(levels));
  for (int level = 0; level < levels; ++level) {
    const double band = T * std::exp2(-(level + 3));
    // Geometric panels from the band edge out to T, two per octave.
    const int octaves = level + 3;
    const int panels = 2 * octaves;
    const double ratio = std::pow(T / band, 1.0 / panels);
    double acc = 0.0;
    double lo = band;
    for (int i = 0; i < panels; ++i) {
      const double hi = (i + 1 == panels) ? T : lo * ratio;
      acc += gauss_panel(inner, lo, hi);
      lo = hi;
    }
    out.estimates.push_back(scale * scale * acc);
  }

  const double last = out.estimates[out.estimates.size() - 1];
  const double prev = out.estimates[out.estimates.size() - 2];
  out.converged = std::abs(last - prev) <= 0.01 * std::max(std::abs(last), std::abs(prev));
  return out;
}

std::string to_string(SemimartRegime r) {
  switch (r) {
    case SemimartRegime::pure_bm: return "pure_bm";
    case SemimartRegime::brownian_h_half: return "brownian_H_half";
    case SemimartRegime::rough_not_weak_semimart: return "rough_not_weak_semimart";
    case SemimartRegime::intermediate_not_quasimart: return "intermediate_not_quasimart";
    case SemimartRegime::smooth_semimart: return "smooth_semimart";
  }
  return "unknown";
}

SemimartVerdict semimart_verdict(const MixCoeffs& c, HurstParam h) {
  SemimartVerdict v;
  if (c.b == 0.0) {
    v.is_semimartingale = true;
    v.regime = SemimartRegime::pure_bm;
    v.citations = {"b = 0: the process is a scaled Brownian motion"};
    return v;
  }
  if (h.is_half()) {
    v.is_semimartingale = true;
    v.regime = SemimartRegime::brownian_h_half;
    v.citations = {
        "H = 1/2: the sub-fractional component is Brownian, so the mixture is "
        "Brownian up to scale"};
    return v;
  }
  if (h.value() < 0.5) {
    v.is_semimartingale = false;
    v.regime = SemimartRegime::rough_not_weak_semimart;
    v.citations = {
        "expected quadratic variation diverges along uniform partitions (H < 1/2)",
        "infinite quadratic variation rules out the weak semimartingale property"};
    return v;
  }
  if (h.value() <= 0.75) {
    v.is_semimartingale = false;
    v.regime = SemimartRegime::intermediate_not_quasimart;
    if (h.value() < 0.75) {
      v.citations = {
          "adjacent-increment conditional L1 sums grow like n^{3/2 - 2H} (1/2 < H < 3/4): "
          "not a quasi-martingale",
          "failure of the quasi-martingale property excludes the weak semimartingale property"};
    } else {
      v.citations = {
          "conditional L2 sums against the full increment history diverge "
          "logarithmically at H = 3/4: not a quasi-martingale",
          "failure of the quasi-martingale property excludes the weak semimartingale property"};
    }
    return v;
  }
  v.is_semimartingale = true;
  v.regime = SemimartRegime::smooth_semimart;
  v.citations = {
      "the mixed partial derivative of the fractional covariance is square "
      "integrable for H > 3/4: semimartingale equivalent in law to a scaled "
      "Brownian motion"};
  return v;
}

}  // namespace smfbm
