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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "smfbm/kernels.hpp"
#include "support/checks.hpp"

using namespace smfbm;
using testutil::close;
using testutil::Rand;

namespace {

// Sub-fractional covariance through the four-term fBm expansion of the
// mirrored construction; the independent oracle for sfbm_cov.
double sfbm_via_fbm(double s, double t, HurstParam h) {
  return 0.5 * (fbm_cov(s, t, h) + fbm_cov(s, -t, h) + fbm_cov(-s, t, h) +
                fbm_cov(-s, -t, h));
}

}  // namespace

TEST_CASE("fbm_cov examples") {
  CHECK(fbm_cov(1.0, 1.0, HurstParam(0.5)) == 1.0);
  CHECK(fbm_cov(1.0, -1.0, HurstParam(0.5)) == 0.0);
  // 2^{0.4}, frozen at 40 digits
  CHECK(close(fbm_cov(1.0, 2.0, HurstParam(0.7)), 1.319507910772894259374001971229640133033, 1e-15));
}

TEST_CASE("sfbm_cov examples and domain") {
  CHECK(sfbm_cov(1.0, 3.0, HurstParam(0.5)) == 1.0);
  CHECK(sfbm_cov(2.5, 0.25, HurstParam(0.5)) == 0.25);
  CHECK(sfbm_cov(0.0, 3.7, HurstParam(0.81)) == 0.0);
  CHECK(close(sfbm_cov(1.0, 2.0, HurstParam(0.7)), 0.8112474606727490073379862391842312811734, 1e-14));
  CHECK_THROWS_AS(sfbm_cov(-1.0, 2.0, HurstParam(0.7)), std::domain_error);
}

TEST_CASE("mfbm_cov examples and domain") {
  CHECK(mfbm_cov(1.0, 1.0, MixCoeffs(1, 0), HurstParam(0.77)) == 1.0);
  CHECK(mfbm_cov(1.0, 2.0, MixCoeffs(0, 1), HurstParam(0.5)) == 1.0);
  CHECK(close(mfbm_cov(1.0, 2.0, MixCoeffs(1, 1), HurstParam(0.7)),
              2.319507910772894259374001971229640133033, 1e-14));
  CHECK_THROWS_AS(mfbm_cov(1.0, -2.0, MixCoeffs(1, 1), HurstParam(0.7)), std::domain_error);
}

TEST_CASE("smfbm_cov examples and domain") {
  CHECK(smfbm_cov(1.0, 2.0, MixCoeffs(1, 1), HurstParam(0.5)) == 2.0);
  CHECK(close(smfbm_cov(1.0, 2.0, MixCoeffs(1, 1), HurstParam(0.7)),
              1.811247460672749007337986239184231281173, 1e-14));
  CHECK(smfbm_cov(0.0, 5.0, MixCoeffs(2, 3), HurstParam(0.3)) == 0.0);
  CHECK_THROWS_AS(smfbm_cov(-0.1, 2.0, MixCoeffs(1, 1), HurstParam(0.7)), std::domain_error);
}

TEST_CASE("smfbm_var examples") {
  // 3 - sqrt(2)
  CHECK(close(smfbm_var(1.0, MixCoeffs(1, 1), HurstParam(0.75)), 3.0 - std::sqrt(2.0), 1e-15));
  CHECK(smfbm_var(0.625, MixCoeffs(2, 1), HurstParam(0.5)) == doctest::Approx(5.0 * 0.625));
  CHECK(close(smfbm_var(1.0, MixCoeffs(1, 1), HurstParam(0.7)),
              1.680492089227105740625998028770359866967, 1e-14));
  CHECK_THROWS_AS(smfbm_var(-1.0, MixCoeffs(1, 1), HurstParam(0.7)), std::domain_error);
}

TEST_CASE("smfbm_var equals the diagonal covariance") {
  Rand rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double t = rng.log_uniform(1e-3, 1e3);
    const MixCoeffs c(rng.uniform(-2, 2), rng.uniform(0.1, 2));
    const HurstParam h(rng.hurst());
    CHECK(close(smfbm_var(t, c, h), smfbm_cov(t, t, c, h), 1e-12));
  }
}

TEST_CASE("kernel symmetry") {
  Rand rng(22);
  for (int i = 0; i < 2000; ++i) {
    const double s = rng.log_uniform(1e-2, 1e2);
    const double t = rng.log_uniform(1e-2, 1e2);
    const MixCoeffs c(rng.uniform(-2, 2), rng.uniform(-2, 2) + 2.5);
    const HurstParam h(rng.hurst());
    CHECK(close(smfbm_cov(s, t, c, h), smfbm_cov(t, s, c, h), 1e-14));
    CHECK(close(sfbm_cov(s, t, h), sfbm_cov(t, s, h), 1e-14));
    CHECK(close(mfbm_cov(s, t, c, h), mfbm_cov(t, s, c, h), 1e-14));
    CHECK(close(fbm_cov(s - 50.0, t, h), fbm_cov(t, s - 50.0, h), 1e-14));
  }
}

TEST_CASE("smfbm decomposition and H=1/2 collapse") {
  Rand rng(23);
  for (int i = 0; i < 2000; ++i) {
    const double s = rng.log_uniform(1e-2, 10.0);
    const double t = rng.log_uniform(1e-2, 10.0);
    const MixCoeffs c(rng.uniform(-2, 2), rng.uniform(0.1, 2));
    const HurstParam h(rng.hurst());
    const double lhs = smfbm_cov(s, t, c, h);
    const double rhs = c.a2() * std::min(s, t) + c.b2() * sfbm_cov(s, t, h);
    CHECK(close(lhs, rhs, 1e-12));
    CHECK(close(smfbm_cov(s, t, c, HurstParam(0.5)),
                (c.a2() + c.b2()) * std::min(s, t), 1e-12));
  }
}

TEST_CASE("smfbm covariance is nonnegative") {
  Rand rng(24);
  for (int i = 0; i < 10000; ++i) {
    const double s = rng.log_uniform(1e-3, 1e3);
    const double t = rng.log_uniform(1e-3, 1e3);
    const MixCoeffs c(rng.uniform(-2, 2), rng.uniform(-2, 2) + 2.01);
    const HurstParam h(rng.hurst());
    CHECK(smfbm_cov(s, t, c, h) >= -1e-12 * (std::pow(s, h.two_h()) + std::pow(t, h.two_h())));
  }
}

TEST_CASE("sfbm_cov equals the four-term fbm expansion") {
  Rand rng(25);
  for (int i = 0; i < 2000; ++i) {
    const double s = rng.log_uniform(1e-2, 10.0);
    const double t = rng.log_uniform(1e-2, 10.0);
    const HurstParam h(rng.hurst());
    const double scale = std::pow(s, h.two_h()) + std::pow(t, h.two_h());
    CHECK(close(sfbm_cov(s, t, h), sfbm_via_fbm(s, t, h), 1e-12, 1e-12 * scale));
  }
}

TEST_CASE("sfbm_cov accuracy at large near-equal arguments") {
  // Frozen at 40 digits; the 1e-10 relative target for max(s,t) <= 1e6.
  CHECK(close(sfbm_cov(999999.0, 1000000.0, HurstParam(0.8)),
              1927965531.652309122573027871634122612017, 1e-10));
  CHECK(close(sfbm_cov(1000000.0, 1000000.0, HurstParam(0.3)),
              4945.055242797363472169415246996639783529, 1e-12));
  CHECK(close(sfbm_cov(123456.789, 123456.790, HurstParam(0.65)),
              3197527.19598312690692398061533466998042, 1e-12));
}

TEST_CASE("rescale_params") {
  const MixCoeffs id = rescale_params(MixCoeffs(1.25, -0.5), HurstParam(0.7), 1.0);
  CHECK(id.a == 1.25);
  CHECK(id.b == -0.5);
  const MixCoeffs r = rescale_params(MixCoeffs(2, 3), HurstParam(0.7), 4.0);
  CHECK(r.a == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(close(r.b, 7.917047464637365556244011827377840798201, 1e-14));
  const MixCoeffs bm = rescale_params(MixCoeffs(1, 0), HurstParam(0.31), 9.0);
  CHECK(bm.a == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(bm.b == 0.0);
  CHECK_THROWS_AS(rescale_params(MixCoeffs(1, 1), HurstParam(0.5), 0.0), std::domain_error);
  CHECK_THROWS_AS(rescale_params(MixCoeffs(1, 1), HurstParam(0.5), -2.0), std::domain_error);
}

TEST_CASE("mixed self-similarity at the covariance level") {
  Rand rng(26);
  for (double h : {0.25, 1.0, 4.0}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> pts;
      double t = 0.0;
      for (int i = 0; i < 12; ++i) {
        t += rng.log_uniform(1e-2, 1.0);
        pts.push_back(t);
      }
      const TimeGrid grid{pts};
      const MixCoeffs c(rng.uniform(-2, 2), rng.uniform(0.2, 2));
      const HurstParam hurst(rng.hurst());
      const auto dilated = cov_matrix(ProcessSpec::smfbm(c, hurst), grid.scaled(h));
      const auto rescaled =
          cov_matrix(ProcessSpec::smfbm(rescale_params(c, hurst, h), hurst), grid);
      const double scale = dilated.entries.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < dilated.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < dilated.entries.cols(); ++j) {
          CHECK(close(dilated.entries(i, j), rescaled.entries(i, j), 1e-10, 1e-12 * scale));
        }
      }
    }
  }
}

TEST_CASE("cov_matrix examples") {
  const auto single = cov_matrix(ProcessSpec::smfbm(MixCoeffs(1, 1), HurstParam(0.5)),
                                 TimeGrid{{1.0}});
  CHECK(single.entries.rows() == 1);
  CHECK(single.entries(0, 0) == 2.0);

  const auto two = cov_matrix(ProcessSpec::smfbm(MixCoeffs(1, 1), HurstParam(0.7)),
                              TimeGrid{{0.0, 1.0}});
  CHECK(two.entries(0, 0) == 0.0);
  CHECK(two.entries(0, 1) == 0.0);
  CHECK(two.entries(1, 0) == 0.0);
  CHECK(close(two.entries(1, 1), 1.680492089227105740625998028770359866967, 1e-14));

  Rand rng(27);
  const TimeGrid grid{{0.5, 1.25, 4.0}};
  const auto m = cov_matrix(ProcessSpec::mfbm(MixCoeffs(1.5, -0.5), HurstParam(0.62)), grid);
  const Eigen::MatrixXd mt = m.entries.transpose();
  CHECK((m.entries.array() == mt.array()).all());  // exact symmetry
  CHECK(m.jitter_applied == 0.0);
}

TEST_CASE("parameter validation happens at construction") {
  CHECK_THROWS_AS(HurstParam(0.0), std::domain_error);
  CHECK_THROWS_AS(HurstParam(1.0), std::domain_error);
  CHECK_THROWS_AS(HurstParam(-0.3), std::domain_error);
  CHECK_THROWS_AS(MixCoeffs(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{2.0, 1.0}), std::invalid_argument);
  // bm/fbm/sfbm pin their coefficients
  CHECK(ProcessSpec::bm().coeffs().a == 1.0);
  CHECK(ProcessSpec::bm().coeffs().b == 0.0);
  CHECK(ProcessSpec::bm().hurst().value() == 0.5);
  CHECK(ProcessSpec::fbm(HurstParam(0.7)).coeffs().a == 0.0);
  CHECK(ProcessSpec::sfbm(HurstParam(0.7)).coeffs().b == 1.0);
}

TEST_CASE("uniform grid construction") {
  const auto g = TimeGrid::uniform(0.0, 1.0, 16);
  CHECK(g.size() == 17);
  CHECK(g[0] == 0.0);
  CHECK(g[16] == 1.0);
  CHECK(g.is_uniform_from_zero());
  CHECK_THROWS_AS(TimeGrid::uniform(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1.0, 4), std::invalid_argument);
}
