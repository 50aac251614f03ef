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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace smfbm::rng {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011). A block is
// a pure function of (key, counter), which is what makes path sampling
// reproducible under any parallel schedule: stream identity lives in the
// counter, not in mutable state.
struct Philox4x32 {
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

  static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t ctr_hi,
                                            std::uint64_t ctr_lo) {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
  }
};

// Standard normal draws addressed by (seed, stream, draw index). Box-Muller
// over one Philox block yields two normals, so draw k consumes block k / 2.
// Within one sampling run the stream is the path index (plus a fixed offset
// per independent component).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  double normal(std::uint64_t draw) const {
    const auto w = Philox4x32::block(seed_, stream_, draw >> 1);
    const std::uint64_t v1 = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    const std::uint64_t v2 = (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 = static_cast<double>((v1 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(v2 >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return (draw & 1) ? radius * std::sin(angle) : radius * std::cos(angle);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace smfbm::rng
