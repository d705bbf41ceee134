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

#include <stdexcept>

namespace pamq {

enum class SepMethod
{
    closed_form,
    quadrature,
    monte_carlo,
    noiseless,
    bound_upper,
    bound_lower,
    aqnm,
};

const char* to_string(SepMethod m);

struct SepResult
{
    double value = 0.0;
    SepMethod method = SepMethod::closed_form;
    double abs_error_est = 0.0;
    bool converged = true;
};

/// Raised when an engine produces a value that cannot be trusted
/// (probability outside [0, 1] beyond round-off, quadrature failure).
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a formula is evaluated outside the parameter regime it was
/// derived for.
class RegimeError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// H(b, c, z_lo, z_hi) = int_{z_lo}^{z_hi} Q(-c + sqrt(b z)) f_Z(z) dz with
/// Z ~ Gamma(m, omega/m), by the finite series for integer m.
/// c may be +inf (the integrand is then 1) and z_hi may be +inf.
double h_function(int m, double omega, double b, double c, double z_lo, double z_hi);

struct QuadratureValue
{
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
};

/// Same integral by adaptive quadrature, for any real m >= 1/2.
QuadratureValue h_function_quad(double m, double omega, double b, double c, double z_lo, double z_hi);

/// Average SEP through the H-function series. Requires integer m.
SepResult sep_closed_form(const Constellation& c, const Quantizer& q, const ChannelModel& ch, double snr_lin);

/// Average SEP by integrating the likelihood difference over each decision
/// region. Any m >= 1/2. Throws NumericalError if a region fails to converge.
SepResult sep_quadrature(const Constellation& c, const Quantizer& q, const ChannelModel& ch, double snr_lin);

/// Infinite-SNR SEP: Gamma mass of the fading states in which no noiseless
/// region accepts the transmitted symbol. ch.sigma2 is ignored.
SepResult sep_noiseless(const Constellation& c, const Quantizer& q, const ChannelModel& ch);

/// P(z_lo < Z < z_hi) for Z ~ Gamma(m, omega/m), accurate in both tails.
double gamma_mass(double m, double omega, double z_lo, double z_hi);

struct FloorBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

/// Lower and upper bounds on the optimized error floor:
/// coefficient * [P(Z < q_1^2/rho_1^2) + P(Z > q_K^2/rho_{M/2-2}^2)],
/// with coefficient 2/M (lower) and M/4 - 1/2 (upper).
FloorBounds floor_bounds(const Constellation& c, const Quantizer& q, const ChannelModel& ch);

enum class FloorKind
{
    ratio,    ///< boundaries q_y = q_1 / rho^(y-1); q_param is q_1
    uniform,  ///< q_y = y * step, M = 4; q_param is the step
};

/// Upper bound on the error floor of X_g(rho) with the given quantizer family.
/// Throws RegimeError unless 2^b > M - 2 (ratio) or M = 4 (uniform).
double floor_geometric(const GeometricConstellation& cg, double q_param, const ChannelModel& ch, int bits,
                       FloorKind kind);

/// SEP under the additive quantization noise model with distortion factor
/// alpha in (0, 1].
SepResult sep_aqnm(const Constellation& c, double snr_lin, double alpha);

}  // namespace pamq
