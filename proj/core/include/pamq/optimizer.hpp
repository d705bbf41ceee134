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

#include "pamq/sep.hpp"
#include "pamq/system.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pamq {

struct NelderMeadOptions
{
    double diameter_tol = 1e-9;  ///< stop when every vertex is this close to the best (inf-norm)
    int max_iterations = 2000;
    double initial_step = 0.5;
    bool restart = true;  ///< rebuild the simplex once around the first optimum
};

struct NelderMeadResult
{
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

enum class DesignVariables
{
    quantizer_only,     ///< K free boundaries, constellation fixed
    uniform_step_only,  ///< uniform step, constellation fixed
    joint_nonuniform,   ///< K boundaries + unit-energy constellation
    joint_uniform,      ///< uniform step + unit-energy constellation
    geometric_ratio,    ///< X_g(rho) with q_y = q_1 / rho^(y-1): (rho, q_1)
    ratio_step_only,    ///< q_y = q_1 R^(y-1), R = min rho_{i+1}/rho_i, constellation fixed
};

const char* to_string(DesignVariables v);
DesignVariables design_variables_from_string(const std::string& s);

struct DesignProblem
{
    ChannelModel channel;
    int order = 4;
    int bits = 2;
    DesignVariables variables = DesignVariables::quantizer_only;
    bool noiseless = false;
    double snr_db = 10.0;
    /// Fixed constellation for quantizer-only designs; starting point for joint ones.
    std::optional<Constellation> constellation;
    /// Optional warm start, used as start 0.
    std::optional<Quantizer> initial_quantizer;
    int starts = 16;
    std::uint64_t seed = 1;
    int threads = 1;
    NelderMeadOptions search;

    /// Number of free coordinates. Joint designs drop the overall scale,
    /// which the unit-energy constraint removes.
    int dimension() const;
};

struct DesignResult
{
    Quantizer quantizer;
    Constellation constellation;
    double sep = 1.0;
    SepMethod method = SepMethod::closed_form;
    int starts_used = 0;
    bool converged = false;
};

/// SEP of a concrete design under the problem's channel and SNR, choosing
/// the noiseless, closed-form or quadrature engine as appropriate.
SepResult evaluate_design(const DesignProblem& p, const Constellation& c, const Quantizer& q);

/// Multi-start Nelder-Mead on log(SEP). Deterministic for a given seed and
/// independent of the thread count.
DesignResult optimize(const DesignProblem& p);

/// Unconstrained coordinates of a design, and back. Exposed for diagnostics.
std::vector<double> encode_design(const DesignProblem& p, const Constellation& c, const Quantizer& q);
std::pair<Constellation, Quantizer> decode_design(const DesignProblem& p, std::span<const double> theta);

struct RatioDiagnostics
{
    std::vector<double> ratios;   ///< q_{y-1} / q_y for y = 2..K
    double max_deviation = 0.0;   ///< max |ratio / rho - 1|
    bool within(double tol) const { return max_deviation <= tol; }
};

/// Compare adjacent boundary ratios against the geometric constellation ratio.
RatioDiagnostics check_geometric_ratio(const Quantizer& q, double rho);

/// f_0(rho) = (sigma^2 / rho^B)^C + rho^A.
double shaping_tradeoff(double a, double b, double c, double sigma, double rho);

/// Minimizer of shaping_tradeoff: (BC/A)^(1/(A+BC)) (sigma^2)^(C/(A+BC)).
/// Throws RegimeError unless C < A + BC.
double optimal_shaping_ratio(double a, double b, double c, double sigma);

}  // namespace pamq
