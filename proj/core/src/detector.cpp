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

#include "pamq/detector.hpp"

#include "pamq/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pamq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_output_index(const Quantizer& q, int y)
{
    if (y < 1 || y > q.levels() + 1) {
        throw std::out_of_range("ADC output index " + std::to_string(y) + " outside [1, " +
                                std::to_string(q.levels() + 1) + "]");
    }
}

}  // namespace

int quantize(const Quantizer& q, double r)
{
    const double mag = std::abs(r);
    const auto b = q.positive_boundaries();
    int y = 1;
    while (y <= static_cast<int>(b.size()) && mag >= b[static_cast<std::size_t>(y - 1)]) {
        ++y;
    }
    return r < 0.0 ? -y : y;
}

SignedSymbol ml_detect_midpoint(const Constellation& c, const Quantizer& q, double h_mag, int y)
{
    const int sign = y < 0 ? -1 : 1;
    const int level = std::abs(y);
    check_output_index(q, level);
    const std::size_t top = c.half_size() - 1;
    if (level == q.levels() + 1) {
        return {sign, top};
    }
    const double mid = 0.5 * (q.boundary(level - 1) + q.boundary(level));
    std::size_t best = 0;
    double best_dist = std::abs(mid - h_mag * c.amplitude(0));
    for (std::size_t i = 1; i <= top; ++i) {
        const double d = std::abs(mid - h_mag * c.amplitude(i));
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return {sign, best};
}

DecisionRegion decision_region(const Constellation& c, const Quantizer& q, int y, std::size_t i)
{
    check_output_index(q, y);
    const std::size_t top = c.half_size() - 1;
    if (i > top) {
        throw std::out_of_range("symbol index out of range");
    }
    DecisionRegion r{0.0, 0.0, y, i};
    if (y == q.levels() + 1) {
        if (i == top) {
            r.upper = kInf;
        }
        return r;
    }
    const double span = q.boundary(y - 1) + q.boundary(y);
    if (i < top) {
        const double t = span / (c.amplitude(i) + c.amplitude(i + 1));
        r.lower = t * t;
    }
    if (i == 0) {
        r.upper = kInf;
    } else {
        const double t = span / (c.amplitude(i) + c.amplitude(i - 1));
        r.upper = t * t;
    }
    return r;
}

DecisionRegion noiseless_region(const Constellation& c, const Quantizer& q, int y, std::size_t i)
{
    DecisionRegion r = decision_region(c, q, y, i);
    if (r.empty()) {
        return r;
    }
    const double rho = c.amplitude(i);
    const double lo = q.boundary(y - 1) / rho;
    const double hi = q.boundary(y) / rho;
    r.lower = std::max(r.lower, lo * lo);
    r.upper = std::min(r.upper, hi * hi);
    if (r.upper < r.lower) {
        r.upper = r.lower;
    }
    return r;
}

double log_likelihood(const Quantizer& q, double h_mag, double x, int y, double sigma2)
{
    const int level = std::abs(y);
    check_output_index(q, level);
    double lo = q.boundary(level - 1);
    double hi = q.boundary(level);
    if (y < 0) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
    }
    const double s = std::sqrt(0.5 * sigma2);
    const double mean = h_mag * x;
    const double ll = log_gaussian_interval((lo - mean) / s, (hi - mean) / s);
    return std::max(ll, kLogLikelihoodFloor);
}

SignedSymbol ml_detect_simo(const Constellation& c, const Quantizer& q, std::span<const double> h,
                            std::span<const int> y, double sigma2)
{
    if (h.size() != y.size() || h.empty()) {
        throw std::invalid_argument("ml_detect_simo: need one ADC output per antenna");
    }
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("ml_detect_simo: noise variance must be positive");
    }
    SignedSymbol best{};
    double best_ll = -kInf;
    for (int sign : {-1, 1}) {
        for (std::size_t i = 0; i < c.half_size(); ++i) {
            const double x = sign * c.amplitude(i);
            double ll = 0.0;
            for (std::size_t n = 0; n < h.size(); ++n) {
                ll += log_likelihood(q, h[n], x, y[n], sigma2);
            }
            if (ll > best_ll) {
                best_ll = ll;
                best = {sign, i};
            }
        }
    }
    return best;
}

}  // namespace pamq
