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

#include "pamq/system.hpp"

#include "pamq/rng.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pamq {
namespace {

bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}

void check_increasing_positive(std::span<const double> v, const char* what)
{
    double prev = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || !(v[i] > prev)) {
            throw std::invalid_argument(std::string(what) + " must be finite, positive and strictly increasing (index " +
                                        std::to_string(i) + ")");
        }
        prev = v[i];
    }
}

}  // namespace

Constellation::Constellation(std::vector<double> amplitudes) : amplitudes_(std::move(amplitudes))
{
    if (amplitudes_.size() < 2 || !is_power_of_two(amplitudes_.size())) {
        throw std::invalid_argument("constellation order M = 2 * " + std::to_string(amplitudes_.size()) +
                                    " must be a power of two >= 4");
    }
    check_increasing_positive(amplitudes_, "constellation amplitudes");
}

Constellation Constellation::equidistant(int order, double spacing)
{
    if (order < 4) {
        throw std::invalid_argument("constellation order must be >= 4");
    }
    std::vector<double> a(static_cast<std::size_t>(order / 2));
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = spacing * static_cast<double>(2 * i + 1);
    }
    return Constellation(std::move(a));
}

Constellation Constellation::normalized() const
{
    const double ss = std::inner_product(amplitudes_.begin(), amplitudes_.end(), amplitudes_.begin(), 0.0);
    return scaled(1.0 / std::sqrt(ss));
}

Constellation Constellation::scaled(double factor) const
{
    if (!(factor > 0.0)) {
        throw std::invalid_argument("constellation scale factor must be positive");
    }
    std::vector<double> a = amplitudes_;
    for (double& x : a) {
        x *= factor;
    }
    return Constellation(std::move(a));
}

GeometricConstellation::GeometricConstellation(double rho, int order) : rho_(rho), order_(order)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("geometric constellation ratio must lie in (0, 1)");
    }
    if (order < 4 || !is_power_of_two(static_cast<std::size_t>(order))) {
        throw std::invalid_argument("constellation order must be a power of two >= 4");
    }
    double sum = 0.0;
    for (int i = 1; i <= order / 2; ++i) {
        sum += std::pow(rho, 2 * i);
    }
    normalizer_ = 1.0 / std::sqrt(sum);
}

Constellation GeometricConstellation::materialize() const
{
    const int half = order_ / 2;
    std::vector<double> a(static_cast<std::size_t>(half));
    for (int i = 0; i < half; ++i) {
        a[static_cast<std::size_t>(i)] = normalizer_ * std::pow(rho_, half - i);
    }
    return Constellation(std::move(a));
}

int boundary_count(int bits)
{
    if (bits < 2 || bits > 16) {
        throw std::invalid_argument("quantizer resolution must be between 2 and 16 bits, got " + std::to_string(bits));
    }
    return (1 << (bits - 1)) - 1;
}

Quantizer::Quantizer(int bits, std::vector<double> positive_boundaries)
    : bits_(bits), boundaries_(std::move(positive_boundaries))
{
    const int k = boundary_count(bits);
    if (static_cast<int>(boundaries_.size()) != k) {
        throw std::invalid_argument("a " + std::to_string(bits) + "-bit quantizer needs " + std::to_string(k) +
                                    " positive boundaries, got " + std::to_string(boundaries_.size()));
    }
    check_increasing_positive(boundaries_, "quantizer boundaries");
}

double Quantizer::boundary(int y) const
{
    if (y == 0) {
        return 0.0;
    }
    if (y == levels() + 1) {
        return std::numeric_limits<double>::infinity();
    }
    return boundaries_.at(static_cast<std::size_t>(y - 1));
}

Quantizer Quantizer::scaled(double factor) const
{
    std::vector<double> q = boundaries_;
    for (double& x : q) {
        x *= factor;
    }
    return Quantizer(bits_, std::move(q));
}

UniformQuantizer::UniformQuantizer(double step, int bits) : step_(step), bits_(bits)
{
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("uniform quantizer step must be positive");
    }
    boundary_count(bits);
}

Quantizer UniformQuantizer::materialize() const
{
    std::vector<double> q(static_cast<std::size_t>(boundary_count(bits_)));
    for (std::size_t y = 0; y < q.size(); ++y) {
        q[y] = step_ * static_cast<double>(y + 1);
    }
    return Quantizer(bits_, std::move(q));
}

void ChannelModel::validate() const
{
    if (!(m >= 0.5) || !std::isfinite(m)) {
        throw std::invalid_argument("Nakagami shape m must be >= 1/2, got " + std::to_string(m));
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("Nakagami spread omega must be positive");
    }
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument("noise variance must be nonnegative");
    }
}

bool ChannelModel::integer_shape() const
{
    return m >= 1.0 && std::floor(m) == m;
}

double symbol_energy(const Constellation& c)
{
    const auto a = c.amplitudes();
    return 2.0 * std::inner_product(a.begin(), a.end(), a.begin(), 0.0) / c.order();
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double snr_linear(const Constellation& c, const ChannelModel& ch)
{
    if (!(ch.sigma2 > 0.0)) {
        throw std::invalid_argument("SNR is undefined for a noiseless channel");
    }
    return symbol_energy(c) / ch.sigma2;
}

double snr_db(const Constellation& c, const ChannelModel& ch)
{
    return linear_to_db(snr_linear(c, ch));
}

double noise_variance(const Constellation& c, double snr_lin)
{
    if (!(snr_lin > 0.0)) {
        throw std::invalid_argument("SNR must be positive");
    }
    return symbol_energy(c) / snr_lin;
}

ChannelModel with_snr(ChannelModel ch, const Constellation& c, double snr_lin)
{
    ch.sigma2 = noise_variance(c, snr_lin);
    return ch;
}

double per_symbol_snr(const Constellation& c, std::size_t i, double snr_lin)
{
    if (i >= c.half_size()) {
        throw std::out_of_range("symbol index " + std::to_string(i) + " out of range");
    }
    const double rho = c.amplitude(i);
    return 2.0 * rho * rho * snr_lin / symbol_energy(c);
}

double sample_fading(const ChannelModel& ch, RandomStream& stream)
{
    return std::sqrt(stream.gamma(ch.m) * ch.omega / ch.m);
}

}  // namespace pamq
