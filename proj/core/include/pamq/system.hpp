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

#include <cstddef>
#include <span>
#include <vector>

namespace pamq {

class RandomStream;

/// Symmetric M-PAM constellation {+/-rho_0, ..., +/-rho_{M/2-1}}.
///
/// Only the positive half is stored, strictly increasing. Amplitudes are kept
/// exactly as given; unit-energy scaling is an explicit call to normalized().
class Constellation
{
  public:
    explicit Constellation(std::vector<double> amplitudes);

    /// {1, 3, 5, ...} * spacing.
    static Constellation equidistant(int order, double spacing = 1.0);

    std::span<const double> amplitudes() const { return amplitudes_; }
    double amplitude(std::size_t i) const { return amplitudes_.at(i); }
    std::size_t half_size() const { return amplitudes_.size(); }
    int order() const { return static_cast<int>(2 * amplitudes_.size()); }

    /// Rescaled so that sum(rho_i^2) = 1, i.e. E_s = 2/M.
    Constellation normalized() const;
    Constellation scaled(double factor) const;

    bool operator==(const Constellation&) const = default;

  private:
    std::vector<double> amplitudes_;
};

/// Geometric constellation X_g(rho) = {+/- C rho^(M/2-i)}, C chosen so that
/// C^2 sum_{i=1}^{M/2} rho^(2i) = 1.
class GeometricConstellation
{
  public:
    GeometricConstellation(double rho, int order);

    double rho() const { return rho_; }
    int order() const { return order_; }
    double normalizer() const { return normalizer_; }

    Constellation materialize() const;

  private:
    double rho_;
    int order_;
    double normalizer_;
};

/// Symmetric b-bit quantizer with positive boundaries q_1 < ... < q_K,
/// K = 2^(b-1) - 1, plus the implicit q_0 = 0 and q_{K+1} = +inf.
class Quantizer
{
  public:
    Quantizer(int bits, std::vector<double> positive_boundaries);

    int bits() const { return bits_; }
    /// Number of finite positive boundaries K.
    int levels() const { return static_cast<int>(boundaries_.size()); }
    std::span<const double> positive_boundaries() const { return boundaries_; }

    /// q_y for y in [0, K+1]; q_0 = 0 and q_{K+1} = +inf.
    double boundary(int y) const;

    Quantizer scaled(double factor) const;

    bool operator==(const Quantizer&) const = default;

  private:
    int bits_;
    std::vector<double> boundaries_;
};

int boundary_count(int bits);

/// Uniform quantizer q_y = y * step.
class UniformQuantizer
{
  public:
    UniformQuantizer(double step, int bits);

    double step() const { return step_; }
    int bits() const { return bits_; }
    Quantizer materialize() const;

  private:
    double step_;
    int bits_;
};

/// Nakagami-m amplitude fading with spread omega and complex noise variance
/// sigma2 (the in-phase branch sees sigma2/2). sigma2 = 0 is the noiseless
/// channel.
struct ChannelModel
{
    double m = 1.0;
    double omega = 1.0;
    double sigma2 = 0.0;

    void validate() const;
    bool integer_shape() const;

    bool operator==(const ChannelModel&) const = default;
};

/// E_s = (2/M) sum rho_i^2.
double symbol_energy(const Constellation& c);

double db_to_linear(double db);
double linear_to_db(double linear);

/// E_s / sigma2 (linear). Requires sigma2 > 0.
double snr_linear(const Constellation& c, const ChannelModel& ch);
double snr_db(const Constellation& c, const ChannelModel& ch);

/// sigma2 that realizes the given linear SNR.
double noise_variance(const Constellation& c, double snr_lin);

/// Copy of ch with sigma2 set for the given linear SNR.
ChannelModel with_snr(ChannelModel ch, const Constellation& c, double snr_lin);

/// Effective per-symbol SNR b_i entering Q(-c + sqrt(b_i z)):
/// 2 rho_i^2 SNR / E_s = 2 rho_i^2 / sigma2.
double per_symbol_snr(const Constellation& c, std::size_t i, double snr_lin);

/// One draw of |h| with |h|^2 ~ Gamma(m, omega/m).
double sample_fading(const ChannelModel& ch, RandomStream& stream);

}  // namespace pamq
