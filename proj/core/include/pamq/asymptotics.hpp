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

#include "pamq/montecarlo.hpp"
#include "pamq/optimizer.hpp"
#include "pamq/sep.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pamq {

struct Rational
{
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational&) const = default;
};

Rational operator*(Rational a, Rational b);

enum class QuantizerKind
{
    nonuniform,
    uniform,
};

const char* to_string(QuantizerKind k);
QuantizerKind quantizer_kind_from_string(const std::string& s);

/// Decay exponent of the jointly optimized design:
/// m N_r (2^b - M + 2) / 2^b (non-uniform), m / 2 (uniform, M = 4, SISO).
Rational dvo_theory(int m, int bits, int order, QuantizerKind kind, int antennas = 1);

struct CurvePoint
{
    double snr_db = 0.0;
    double sep = 0.0;
    SepMethod method = SepMethod::closed_form;
};

struct DvoEstimate
{
    double slope = 0.0;
    double window_lo_db = 0.0;
    double window_hi_db = 0.0;
    double r2 = 0.0;
    int points = 0;
};

inline constexpr double kSepFitFloor = 1e-12;
inline constexpr std::uint64_t kMinFitErrors = 100;

/// Least-squares slope of -log10(sep) against log10(snr) over the window.
/// Points below kSepFitFloor are dropped; throws std::invalid_argument if
/// fewer than four remain.
DvoEstimate dvo_fit(std::span<const CurvePoint> curve, double lo_db, double hi_db);

/// Same for Monte Carlo estimates; points with fewer than kMinFitErrors
/// errors are dropped.
DvoEstimate dvo_fit(std::span<const SimEstimate> curve, double lo_db, double hi_db);

struct DqEstimate
{
    double slope = 0.0;                      ///< least-squares slope of -log2 P against b
    std::vector<double> successive_slopes;   ///< -log2 P(b+1) + log2 P(b)
    bool slopes_increasing = false;          ///< strictly increasing successive slopes
};

DqEstimate dq_metric(const std::function<double(int)>& floor_fn, int b_lo, int b_hi);

struct SchedulePoint
{
    double rho = 0.0;
    double q_param = 0.0;  ///< q_1 (ratio) or step (uniform)
    double bound = 0.0;
};

/// floor_geometric along rho with q_param = sqrt(C^2 rho^a). The exponent a
/// must lie in (M - 2, 2^b) for ratio quantizers and in (2, 4) for uniform ones.
std::vector<SchedulePoint> floor_schedule(std::span<const double> rhos, double a, int bits, int order,
                                          const ChannelModel& ch, FloorKind kind);

/// Lowest noiseless SEP of a fixed constellation over one quantizer family:
/// ratio-structured boundaries q_y = q_1 R^(y-1) (non-uniform; exact optimum
/// for M = 4) or a uniform step. One free parameter in both cases.
DesignResult optimal_floor(const Constellation& c, const ChannelModel& ch, int bits, QuantizerKind kind,
                           int starts = 16, std::uint64_t seed = 1);

struct DvoExperimentSpec
{
    int m = 1;
    double omega = 1.0;
    int bits = 2;
    int order = 4;
    QuantizerKind kind = QuantizerKind::nonuniform;
    int antennas = 1;
    std::vector<double> snr_db;
    double window_lo_db = 20.0;
    double window_hi_db = 50.0;
    int starts = 8;
    std::uint64_t seed = 1;
    int threads = 1;
    std::uint64_t mc_trials = 1'000'000;  ///< per point, antennas > 1 only
};

struct DvoExperimentResult
{
    DvoEstimate estimate;
    Rational theory;
    std::vector<CurvePoint> curve;
    std::vector<SimEstimate> simulated;  ///< filled for antennas > 1
    std::vector<DesignResult> designs;
};

/// Optimize the design at each SNR (ascending, warm-started from the previous
/// optimum and from the best geometric-ratio design), then fit the decay
/// exponent. Multi-antenna runs simulate the single-antenna optimum with the
/// product-likelihood detector.
DvoExperimentResult dvo_experiment(const DvoExperimentSpec& spec);

}  // namespace pamq
