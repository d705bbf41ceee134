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

#include "pamq/system.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pamq {

struct SimSpec
{
    SimSpec(Constellation c, Quantizer q, ChannelModel ch)
        : constellation(std::move(c)), quantizer(std::move(q)), channel(ch)
    {
    }

    Constellation constellation;
    Quantizer quantizer;
    ChannelModel channel;
    std::vector<double> snr_db;  ///< ignored by simulate_noiseless
    std::uint64_t trials = 1'000'000;
    int antennas = 1;
    std::uint64_t seed = 1;
    std::uint64_t batch_size = 65'536;
    int threads = 1;
    /// Route single-antenna runs through the product-likelihood detector.
    bool force_product_rule = false;
    /// Stop a point once this many errors are seen (whole batches only).
    std::optional<std::uint64_t> target_errors;

    void validate() const;
};

struct SimEstimate
{
    double snr_db = 0.0;
    double sep_hat = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double std_error = 0.0;  ///< sqrt(p (1 - p) / n)
};

/// Link-level simulation, one estimate per SNR point. Point k uses stream
/// point index k and batch j uses batch index j, so the counts do not depend
/// on the number of worker threads.
std::vector<SimEstimate> simulate(const SimSpec& spec);

/// Same pipeline with no noise: the detector sees |h| x exactly.
SimEstimate simulate_noiseless(const SimSpec& spec);

}  // namespace pamq
