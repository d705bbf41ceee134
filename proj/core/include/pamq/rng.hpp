// SPDX-License-Identifier: Apache-2.0
//
// pamq: symbol error analysis for low-resolution PAM receivers
// Copyright (C) 2026 The pamq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pamq {

/// Philox4x32-10 block function (Salmon et al., SC'11): a keyed bijection on
/// 128-bit counters.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Reproducible random stream addressed by (seed, point, batch).
///
/// The 64-bit master seed is the Philox key. Counter word 3 holds the grid
/// point index, word 2 the batch index, and words 0-1 a 64-bit block counter
/// that starts at zero. Two streams with different (point, batch) therefore
/// never share a block, and any stream can be regenerated without replaying
/// the others.
class RandomStream
{
  public:
    using result_type = std::uint32_t;

    RandomStream(std::uint64_t seed, std::uint32_t point, std::uint32_t batch);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in the open interval (0, 1), 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();

    /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the U^(1/shape) boost.
    double gamma(double shape);

    /// Uniform integer in [0, n).
    std::uint32_t below(std::uint32_t n);

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int next_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pamq
