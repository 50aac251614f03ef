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

#include "smfbm/simulate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "smfbm/errors.hpp"
#include "smfbm/rng.hpp"

namespace smfbm {

namespace {

// Stream offset separating the Brownian component draws from the fractional
// component draws inside one path.
constexpr std::uint64_t kBrownianDrawOffset = std::uint64_t{1} << 40;

int resolve_threads(int requested, int n_paths) {
  int t = requested;
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (t > n_paths) t = n_paths;
  return t;
}

// Runs fn(p) for every path index in [0, n_paths) over `threads` blocks.
template <typename Fn>
void parallel_paths(int n_paths, int threads, const Fn& fn) {
  if (threads <= 1) {
    for (int p = 0; p < n_paths; ++p) fn(p);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (n_paths + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n_paths, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int p = lo; p < hi; ++p) fn(p);
    });
  }
  for (auto& th : pool) th.join();
}

void check_config(const SamplerConfig& cfg) {
  if (cfg.n_paths < 1) throw std::invalid_argument("sampler requires n_paths >= 1");
  if (cfg.grid.size() > kMaxGridPoints) {
    throw std::invalid_argument(
        "grid has " + std::to_string(cfg.grid.size()) + " points; the dense " +
        "factorization is capped at " + std::to_string(kMaxGridPoints) +
        " (split the run or coarsen the grid)");
  }
}

double diag_ratio(const Eigen::MatrixXd& lower) {
  if (lower.rows() == 0) return 1.0;
  const double mx = lower.diagonal().maxCoeff();
  const double mn = lower.diagonal().minCoeff();
  return mx > 0.0 ? mn / mx : 0.0;
}

}  // namespace

std::string to_string(SampleMethod m) {
  return m == SampleMethod::direct ? "direct" : "constructive";
}

SampleMethod sample_method_from_string(const std::string& name) {
  if (name == "direct") return SampleMethod::direct;
  if (name == "constructive") return SampleMethod::constructive;
  throw std::invalid_argument("unknown sample method: " + name);
}

FactorResult factorize(const Eigen::MatrixXd& cov, const std::string& context) {
  if (cov.rows() != cov.cols()) {
    throw std::invalid_argument("factorize requires a square matrix");
  }
  if (cov.rows() == 0) return FactorResult{Eigen::MatrixXd(0, 0), 0.0};

  const double base = 1e-14 * cov.diagonal().mean();
  double jitter = 0.0;
  constexpr int kMaxRetries = 6;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    Eigen::MatrixXd work = cov;
    if (jitter > 0.0) work.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success) {
      return FactorResult{llt.matrixL(), jitter};
    }
    jitter = (jitter == 0.0) ? base : 10.0 * jitter;
  }
  throw numerical_error("covariance factorization failed at jitter " +
                        std::to_string(jitter / 10.0) +
                        (context.empty() ? "" : " (" + context + ")"));
}

PathEnsemble sample_direct(const SamplerConfig& cfg, int threads) {
  check_config(cfg);
  const std::size_t n = cfg.grid.size();
  const bool pinned = cfg.grid.starts_at_zero();
  const std::size_t m = pinned ? n - 1 : n;

  PathEnsemble out{cfg, Eigen::MatrixXd::Zero(cfg.n_paths, static_cast<Eigen::Index>(n)),
                   0.0, 1.0};
  if (m == 0) return out;

  const CovarianceMatrix cov = cov_matrix(cfg.spec, cfg.grid);
  const Eigen::Index off = pinned ? 1 : 0;
  const Eigen::MatrixXd reduced = cov.entries.bottomRightCorner(
      static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  const FactorResult fac =
      factorize(reduced, to_string(cfg.spec.kind()) + " covariance, " +
                             std::to_string(n) + "-point grid");
  out.jitter = fac.jitter;
  out.factor_diag_ratio = diag_ratio(fac.lower);

  const int nthreads = resolve_threads(threads, cfg.n_paths);
  parallel_paths(cfg.n_paths, nthreads, [&](int p) {
    rng::GaussianStream stream(cfg.seed, static_cast<std::uint64_t>(p));
    Eigen::VectorXd z(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      z(static_cast<Eigen::Index>(k)) = stream.normal(k);
    }
    const Eigen::VectorXd x = fac.lower.triangularView<Eigen::Lower>() * z;
    out.values.row(p).segment(off, static_cast<Eigen::Index>(m)) = x.transpose();
  });
  return out;
}

PathEnsemble sample_constructive(const SamplerConfig& cfg, int threads) {
  check_config(cfg);
  const std::size_t n = cfg.grid.size();
  const bool pinned = cfg.grid.starts_at_zero();
  const std::size_t m = pinned ? n - 1 : n;

  PathEnsemble out{cfg, Eigen::MatrixXd::Zero(cfg.n_paths, static_cast<Eigen::Index>(n)),
                   0.0, 1.0};
  if (m == 0) return out;

  const MixCoeffs c = cfg.spec.coeffs();
  const HurstParam h = cfg.spec.hurst();
  const Eigen::Index off = pinned ? 1 : 0;
  const ProcessKind kind = cfg.spec.kind();
  const bool mirrored = kind == ProcessKind::bm || kind == ProcessKind::sfbm ||
                        kind == ProcessKind::smfbm;

  // Sample points the component fields are drawn at: the grid itself for the
  // fBm-based kinds, the sign-mirrored grid for the sub-fractional kinds.
  std::vector<double> pts;
  pts.reserve(mirrored ? 2 * m : m);
  if (mirrored) {
    for (std::size_t k = 0; k < m; ++k) pts.push_back(-cfg.grid[k + (pinned ? 1 : 0)]);
  }
  for (std::size_t k = 0; k < m; ++k) pts.push_back(cfg.grid[k + (pinned ? 1 : 0)]);
  const auto dim = static_cast<Eigen::Index>(pts.size());

  const auto fbm_matrix = [&](HurstParam hurst) {
    Eigen::MatrixXd mat(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = i; j < dim; ++j) {
        const double v = fbm_cov(pts[static_cast<std::size_t>(i)],
                                 pts[static_cast<std::size_t>(j)], hurst);
        mat(i, j) = v;
        mat(j, i) = v;
      }
    }
    return mat;
  };

  FactorResult frac_fac;  // fractional component, Hurst index H
  FactorResult bm_fac;    // Brownian component, Hurst index 1/2
  out.jitter = 0.0;
  out.factor_diag_ratio = 1.0;
  if (c.b != 0.0) {
    frac_fac = factorize(fbm_matrix(h), "constructive fractional component");
    out.jitter = std::max(out.jitter, frac_fac.jitter);
    out.factor_diag_ratio = std::min(out.factor_diag_ratio, diag_ratio(frac_fac.lower));
  }
  if (c.a != 0.0) {
    bm_fac = factorize(fbm_matrix(HurstParam(0.5)), "constructive Brownian component");
    out.jitter = std::max(out.jitter, bm_fac.jitter);
    out.factor_diag_ratio = std::min(out.factor_diag_ratio, diag_ratio(bm_fac.lower));
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const int nthreads = resolve_threads(threads, cfg.n_paths);
  parallel_paths(cfg.n_paths, nthreads, [&](int p) {
    rng::GaussianStream stream(cfg.seed, static_cast<std::uint64_t>(p));
    Eigen::VectorXd frac_field = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd bm_field = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd z(dim);
    if (c.b != 0.0) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        z(k) = stream.normal(static_cast<std::uint64_t>(k));
      }
      frac_field = frac_fac.lower.triangularView<Eigen::Lower>() * z;
    }
    if (c.a != 0.0) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        z(k) = stream.normal(kBrownianDrawOffset + static_cast<std::uint64_t>(k));
      }
      bm_field = bm_fac.lower.triangularView<Eigen::Lower>() * z;
    }
    for (std::size_t k = 0; k < m; ++k) {
      double frac_part, bm_part;
      if (mirrored) {
        // xi(t_k) = (X(t_k) + X(-t_k)) / sqrt(2)
        const auto neg = static_cast<Eigen::Index>(k);
        const auto pos = static_cast<Eigen::Index>(m + k);
        frac_part = (frac_field(pos) + frac_field(neg)) * inv_sqrt2;
        bm_part = (bm_field(pos) + bm_field(neg)) * inv_sqrt2;
      } else {
        frac_part = frac_field(static_cast<Eigen::Index>(k));
        bm_part = bm_field(static_cast<Eigen::Index>(k));
      }
      out.values(p, off + static_cast<Eigen::Index>(k)) = c.a * bm_part + c.b * frac_part;
    }
  });
  return out;
}

PathEnsemble sample(const SamplerConfig& cfg, int threads) {
  return cfg.method == SampleMethod::direct ? sample_direct(cfg, threads)
                                            : sample_constructive(cfg, threads);
}

}  // namespace smfbm
