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

#include "pamq/montecarlo.hpp"

#include "pamq/detector.hpp"
#include "pamq/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pamq {
namespace {

struct Tally
{
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
};

SimEstimate make_estimate(double snr_db, Tally t)
{
    SimEstimate e;
    e.snr_db = snr_db;
    e.trials = t.trials;
    e.errors = t.errors;
    e.sep_hat = t.trials ? static_cast<double>(t.errors) / static_cast<double>(t.trials) : 0.0;
    e.std_error = t.trials ? std::sqrt(e.sep_hat * (1.0 - e.sep_hat) / static_cast<double>(t.trials)) : 0.0;
    return e;
}

/// Errors in one batch. sigma2 = 0 means noiseless.
std::uint64_t run_batch(const SimSpec& s, double sigma2, std::uint32_t point, std::uint32_t batch,
                        std::uint64_t count)
{
    RandomStream stream(s.seed, point, batch);
    const auto half = static_cast<std::uint32_t>(s.constellation.half_size());
    const double noise_sd = std::sqrt(0.5 * sigma2);
    const bool product_rule = s.antennas > 1 || s.force_product_rule;
    std::vector<double> h(static_cast<std::size_t>(s.antennas));
    std::vector<int> y(static_cast<std::size_t>(s.antennas));
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
        const std::uint32_t pick = stream.below(2 * half);
        const SignedSymbol sent{pick < half ? -1 : 1, pick % half};
        const double x = sent.value(s.constellation);
        for (std::size_t n = 0; n < h.size(); ++n) {
            h[n] = sample_fading(s.channel, stream);
            const double r = h[n] * x + (sigma2 > 0.0 ? noise_sd * stream.normal() : 0.0);
            y[n] = quantize(s.quantizer, r);
        }
        SignedSymbol decided;
        if (product_rule && sigma2 > 0.0) {
            decided = ml_detect_simo(s.constellation, s.quantizer, h, y, sigma2);
        } else {
            decided = ml_detect_midpoint(s.constellation, s.quantizer, h[0], y[0]);
        }
        errors += decided == sent ? 0 : 1;
    }
    return errors;
}

Tally run_point(const SimSpec& s, double sigma2, std::uint32_t point)
{
    const std::uint64_t batches = (s.trials + s.batch_size - 1) / s.batch_size;
    std::vector<std::uint64_t> errs(batches, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t j = next++; j < batches; j = next++) {
            const std::uint64_t count = std::min(s.batch_size, s.trials - j * s.batch_size);
            errs[j] = run_batch(s, sigma2, point, static_cast<std::uint32_t>(j), count);
        }
    };
    if (s.target_errors) {
        // Sequential so that the stopping batch does not depend on scheduling.
        Tally t;
        for (std::uint64_t j = 0; j < batches && t.errors < *s.target_errors; ++j) {
            const std::uint64_t count = std::min(s.batch_size, s.trials - j * s.batch_size);
            t.errors += run_batch(s, sigma2, point, static_cast<std::uint32_t>(j), count);
            t.trials += count;
        }
        return t;
    }
    const int threads = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(s.threads), 1, batches));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    Tally t;
    t.trials = s.trials;
    for (std::uint64_t e : errs) {
        t.errors += e;
    }
    return t;
}

}  // namespace

void SimSpec::validate() const
{
    channel.validate();
    if (trials < 1) {
        throw std::invalid_argument("simulation needs at least one trial");
    }
    if (antennas < 1) {
        throw std::invalid_argument("antenna count must be >= 1");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("batch size must be >= 1");
    }
    if ((trials + batch_size - 1) / batch_size > 0xFFFFFFFFull) {
        throw std::invalid_argument("too many batches; increase the batch size");
    }
}

std::vector<SimEstimate> simulate(const SimSpec& spec)
{
    spec.validate();
    std::vector<SimEstimate> out;
    out.reserve(spec.snr_db.size());
    for (std::size_t k = 0; k < spec.snr_db.size(); ++k) {
        const double sigma2 = noise_variance(spec.constellation, db_to_linear(spec.snr_db[k]));
        out.push_back(make_estimate(spec.snr_db[k], run_point(spec, sigma2, static_cast<std::uint32_t>(k))));
    }
    return out;
}

SimEstimate simulate_noiseless(const SimSpec& spec)
{
    spec.validate();
    return make_estimate(std::numeric_limits<double>::infinity(), run_point(spec, 0.0, 0));
}

}  // namespace pamq
