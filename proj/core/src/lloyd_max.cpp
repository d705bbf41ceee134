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

#include "pamq/lloyd_max.hpp"

#include "pamq/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pamq {
namespace {

double normal_pdf(double x)
{
    if (std::isinf(x)) {
        return 0.0;
    }
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

ScalarQuantizerDesign lloyd_max(int bits)
{
    if (bits < 1 || bits > 10) {
        throw std::invalid_argument("Lloyd-Max design supports 1 to 10 bits");
    }
    const std::size_t half = std::size_t{1} << (bits - 1);
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Positive cells [t_{j-1}, t_j), t_0 = 0, t_half = inf.
    std::vector<double> t(half + 1);
    std::vector<double> r(half);
    const double width = 4.0 / static_cast<double>(half);
    for (std::size_t j = 0; j < half; ++j) {
        r[j] = width * (static_cast<double>(j) + 0.5);
    }
    double distortion = 1.0;
    for (int iter = 0; iter < 200000; ++iter) {
        t[0] = 0.0;
        t[half] = inf;
        for (std::size_t j = 1; j < half; ++j) {
            t[j] = 0.5 * (r[j - 1] + r[j]);
        }
        double moved = 0.0;
        double captured = 0.0;
        for (std::size_t j = 0; j < half; ++j) {
            const double mass = gaussian_interval(t[j], t[j + 1]);
            const double centroid = (normal_pdf(t[j]) - normal_pdf(t[j + 1])) / mass;
            moved = std::max(moved, std::abs(centroid - r[j]));
            r[j] = centroid;
            captured += 2.0 * mass * centroid * centroid;
        }
        distortion = 1.0 - captured;
        if (moved < 1e-13) {
            break;
        }
    }
    ScalarQuantizerDesign out;
    out.thresholds.assign(t.begin() + 1, t.end() - 1);
    out.reconstruction = r;
    out.distortion = distortion;
    return out;
}

double aqnm_alpha(int bits)
{
    return 1.0 - lloyd_max(bits).distortion;
}

}  // namespace pamq
