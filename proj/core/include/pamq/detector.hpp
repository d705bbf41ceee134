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

#include <cstddef>
#include <span>

namespace pamq {

/// Transmitted/detected symbol: sign * rho_index.
struct SignedSymbol
{
    int sign = 1;
    std::size_t index = 0;

    double value(const Constellation& c) const { return sign * c.amplitude(index); }
    bool operator==(const SignedSymbol&) const = default;
};

/// Interval (lower, upper) on the z = |h|^2 axis. lower == upper is empty.
struct DecisionRegion
{
    double lower = 0.0;
    double upper = 0.0;
    int y = 1;
    std::size_t i = 0;

    bool empty() const { return !(lower < upper); }
    bool contains(double z) const { return lower < z && z < upper; }
};

/// Signed ADC output index of r. Positive side: the y with q_{y-1} <= r < q_y,
/// saturating at K+1. Negative inputs mirror; r = 0 maps to +1.
int quantize(const Quantizer& q, double r);

/// ML symbol for ADC output y given |h|: the symbol closest to the midpoint
/// of the y-th region, or the outermost symbol for the saturation region. Ties go to the lower index.
SignedSymbol ml_detect_midpoint(const Constellation& c, const Quantizer& q, double h_mag, int y);

/// Region of z = |h|^2 in which the midpoint rule picks rho_i for output y.
/// y in [1, K+1], i in [0, M/2).
DecisionRegion decision_region(const Constellation& c, const Quantizer& q, int y, std::size_t i);

/// decision_region intersected with the noiseless acceptance set
/// (q_{y-1}^2 / rho_i^2, q_y^2 / rho_i^2).
DecisionRegion noiseless_region(const Constellation& c, const Quantizer& q, int y, std::size_t i);

/// Floor applied to every per-antenna log-likelihood factor.
inline constexpr double kLogLikelihoodFloor = -745.0;

/// log P(y | |h|, x) for in-phase noise N(0, sigma2/2), floored.
double log_likelihood(const Quantizer& q, double h_mag, double x, int y, double sigma2);

/// Multi-antenna ML rule: argmax over the signed constellation of the product
/// of per-antenna likelihoods, computed in the log domain.
SignedSymbol ml_detect_simo(const Constellation& c, const Quantizer& q, std::span<const double> h,
                            std::span<const int> y, double sigma2);

}  // namespace pamq
