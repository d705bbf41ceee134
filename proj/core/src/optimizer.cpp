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

#include "pamq/optimizer.hpp"

#include "pamq/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace pamq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLhsBlock = 16;
constexpr std::uint32_t kStartStreamPoint = 0x7FFFFFFF;

bool is_joint(DesignVariables v)
{
    return v == DesignVariables::joint_nonuniform || v == DesignVariables::joint_uniform;
}

bool is_uniform(DesignVariables v)
{
    return v == DesignVariables::uniform_step_only || v == DesignVariables::joint_uniform;
}

bool is_single_step(DesignVariables v)
{
    return is_uniform(v) || v == DesignVariables::ratio_step_only;
}

/// Smallest adjacent amplitude ratio rho_{i+1} / rho_i.
double min_amplitude_ratio(const Constellation& c)
{
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < c.half_size(); ++i) {
        r = std::min(r, c.amplitude(i) / c.amplitude(i - 1));
    }
    return r;
}

Constellation reference_constellation(const DesignProblem& p)
{
    if (p.constellation) {
        if (p.constellation->order() != p.order) {
            throw std::invalid_argument("constellation size does not match the modulation order");
        }
        return is_joint(p.variables) ? p.constellation->normalized() : *p.constellation;
    }
    if (!is_joint(p.variables)) {
        throw std::invalid_argument("quantizer-only designs need a fixed constellation");
    }
    return Constellation::equidistant(p.order).normalized();
}

/// Boundary scale sqrt(omega E_s) of the reference constellation.
double boundary_scale(const DesignProblem& p)
{
    if (p.variables == DesignVariables::geometric_ratio) {
        return std::sqrt(p.channel.omega * 2.0 / p.order);
    }
    return std::sqrt(p.channel.omega * symbol_energy(reference_constellation(p)));
}

int quantizer_dimension(const DesignProblem& p)
{
    return is_single_step(p.variables) ? 1 : boundary_count(p.bits);
}

std::vector<double> encode_boundaries(std::span<const double> q, double scale)
{
    std::vector<double> theta(q.size());
    theta[0] = std::log(q[0] / scale);
    for (std::size_t y = 1; y < q.size(); ++y) {
        theta[y] = std::log(q[y] / q[y - 1] - 1.0);
    }
    return theta;
}

std::vector<double> decode_boundaries(std::span<const double> theta, double scale)
{
    std::vector<double> q(theta.size());
    q[0] = scale * std::exp(theta[0]);
    for (std::size_t y = 1; y < q.size(); ++y) {
        q[y] = q[y - 1] * (1.0 + std::exp(theta[y]));
    }
    return q;
}

Constellation decode_shape(std::span<const double> phi)
{
    std::vector<double> a(phi.size() + 1);
    a[0] = 1.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        a[i] = a[i - 1] * (1.0 + std::exp(phi[i - 1]));
    }
    return Constellation(std::move(a)).normalized();
}

std::vector<double> encode_shape(const Constellation& c)
{
    std::vector<double> phi(c.half_size() - 1);
    for (std::size_t i = 1; i < c.half_size(); ++i) {
        phi[i - 1] = std::log(c.amplitude(i) / c.amplitude(i - 1) - 1.0);
    }
    return phi;
}

/// Row `row` of the Latin-hypercube block `block`, in the unit cube.
std::vector<double> lhs_row(std::uint64_t seed, int block, int row, int dim)
{
    RandomStream stream(seed, kStartStreamPoint, static_cast<std::uint32_t>(block));
    std::vector<double> out(static_cast<std::size_t>(dim));
    std::vector<int> perm(kLhsBlock);
    for (int d = 0; d < dim; ++d) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int k = kLhsBlock - 1; k > 0; --k) {
            std::swap(perm[static_cast<std::size_t>(k)], perm[stream.below(static_cast<std::uint32_t>(k + 1))]);
        }
        double jitter = 0.0;
        for (int r = 0; r <= row; ++r) {
            jitter = stream.uniform();
        }
        for (int r = row + 1; r < kLhsBlock; ++r) {
            stream.uniform();
        }
        out[static_cast<std::size_t>(d)] = (perm[static_cast<std::size_t>(row)] + jitter) / kLhsBlock;
    }
    return out;
}

double lerp_log(double lo, double hi, double u)
{
    return std::log(lo) + u * (std::log(hi) - std::log(lo));
}

/// Map a unit-cube point to design coordinates.
std::vector<double> start_from_unit(const DesignProblem& p, std::span<const double> u)
{
    const double scale = boundary_scale(p);
    std::vector<double> theta;
    std::size_t k = 0;
    if (p.variables == DesignVariables::geometric_ratio) {
        const double rho = 0.05 + 0.9 * u[0];
        return {std::log(rho / (1.0 - rho)), std::log(0.1 + 2.9 * u[1])};
    }
    if (is_uniform(p.variables)) {
        const double levels = boundary_count(p.bits);
        theta.push_back(std::log((0.1 + 2.9 * u[k++]) / levels));
    } else if (p.variables == DesignVariables::ratio_step_only) {
        theta.push_back(std::log(0.1 + 2.9 * u[k++]));
    } else {
        const int nq = boundary_count(p.bits);
        std::vector<double> q(static_cast<std::size_t>(nq));
        for (double& x : q) {
            x = scale * (0.1 + 2.9 * u[k++]);
        }
        std::sort(q.begin(), q.end());
        for (std::size_t y = 1; y < q.size(); ++y) {
            q[y] = std::max(q[y], q[y - 1] * (1.0 + 1e-6));
        }
        theta = encode_boundaries(q, scale);
    }
    if (is_joint(p.variables)) {
        for (int i = 1; i < p.order / 2; ++i) {
            theta.push_back(lerp_log(0.2, 20.0, u[k++]));
        }
    }
    return theta;
}

void check_problem(const DesignProblem& p)
{
    p.channel.validate();
    boundary_count(p.bits);
    if (p.order < 4 || (p.order & (p.order - 1)) != 0) {
        throw std::invalid_argument("modulation order must be a power of two >= 4");
    }
    if (p.starts < 1) {
        throw std::invalid_argument("need at least one optimizer start");
    }
    if (!p.noiseless && !std::isfinite(p.snr_db)) {
        throw std::invalid_argument("SNR must be finite unless the design is noiseless");
    }
    if (p.variables == DesignVariables::geometric_ratio && !(std::ldexp(1.0, p.bits) > p.order - 2)) {
        throw RegimeError("geometric-ratio design needs 2^b > M - 2");
    }
}

}  // namespace

const char* to_string(DesignVariables v)
{
    switch (v) {
    case DesignVariables::quantizer_only:
        return "quantizer_only";
    case DesignVariables::uniform_step_only:
        return "uniform_step_only";
    case DesignVariables::joint_nonuniform:
        return "joint_nonuniform";
    case DesignVariables::joint_uniform:
        return "joint_uniform";
    case DesignVariables::geometric_ratio:
        return "geometric_ratio";
    case DesignVariables::ratio_step_only:
        return "ratio_step_only";
    }
    return "unknown";
}

DesignVariables design_variables_from_string(const std::string& s)
{
    for (auto v : {DesignVariables::quantizer_only, DesignVariables::uniform_step_only,
                   DesignVariables::joint_nonuniform, DesignVariables::joint_uniform,
                   DesignVariables::geometric_ratio, DesignVariables::ratio_step_only}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    throw std::invalid_argument("unknown design variables '" + s + "'");
}

int DesignProblem::dimension() const
{
    if (variables == DesignVariables::geometric_ratio) {
        return 2;
    }
    const int nq = is_single_step(variables) ? 1 : boundary_count(bits);
    return is_joint(variables) ? nq + order / 2 - 1 : nq;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options)
{
    const std::size_t n = x0.size();
    if (n == 0) {
        throw std::invalid_argument("Nelder-Mead needs at least one coordinate");
    }
    NelderMeadResult result;
    result.x = std::move(x0);
    result.value = f(result.x);

    const int passes = options.restart ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
        std::vector<std::vector<double>> simplex(n + 1, result.x);
        std::vector<double> values(n + 1, result.value);
        for (std::size_t j = 0; j < n; ++j) {
            simplex[j + 1][j] += options.initial_step;
            values[j + 1] = f(simplex[j + 1]);
        }
        std::vector<std::size_t> order(n + 1);
        std::vector<double> centroid(n), trial(n), trial2(n);
        bool converged = false;
        int it = 0;
        for (; it < options.max_iterations; ++it) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return values[a] < values[b];
            });
            const auto& best = simplex[order[0]];
            double diameter = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                for (std::size_t d = 0; d < n; ++d) {
                    diameter = std::max(diameter, std::abs(simplex[order[j]][d] - best[d]));
                }
            }
            if (diameter < options.diameter_tol) {
                converged = true;
                break;
            }
            const std::size_t worst = order[n];
            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t d = 0; d < n; ++d) {
                    centroid[d] += simplex[order[j]][d] / static_cast<double>(n);
                }
            }
            auto along = [&](double t, std::vector<double>& out) {
                for (std::size_t d = 0; d < n; ++d) {
                    out[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
                }
                return f(out);
            };
            const double f_best = values[order[0]];
            const double f_second = values[order[n - 1]];
            const double f_worst = values[worst];
            const double f_r = along(-1.0, trial);
            if (f_r < f_best) {
                const double f_e = along(-2.0, trial2);
                if (f_e < f_r) {
                    simplex[worst] = trial2;
                    values[worst] = f_e;
                } else {
                    simplex[worst] = trial;
                    values[worst] = f_r;
                }
                continue;
            }
            if (f_r < f_second) {
                simplex[worst] = trial;
                values[worst] = f_r;
                continue;
            }
            const bool outside = f_r < f_worst;
            const double f_c = along(outside ? -0.5 : 0.5, trial2);
            if (f_c < (outside ? f_r : f_worst)) {
                simplex[worst] = trial2;
                values[worst] = f_c;
                continue;
            }
            for (std::size_t j = 1; j <= n; ++j) {
                auto& v = simplex[order[j]];
                for (std::size_t d = 0; d < n; ++d) {
                    v[d] = best[d] + 0.5 * (v[d] - best[d]);
                }
                values[order[j]] = f(v);
            }
        }
        const auto best_it = std::min_element(values.begin(), values.end());
        const std::size_t b = static_cast<std::size_t>(best_it - values.begin());
        result.x = simplex[b];
        result.value = values[b];
        result.iterations += it;
        result.converged = converged;
    }
    return result;
}

std::vector<double> encode_design(const DesignProblem& p, const Constellation& c, const Quantizer& q)
{
    const double scale = boundary_scale(p);
    const auto bounds = q.positive_boundaries();
    if (p.variables == DesignVariables::geometric_ratio) {
        const double rho = c.amplitude(0) / c.amplitude(1);
        return {std::log(rho / (1.0 - rho)), std::log(bounds[0] / scale)};
    }
    std::vector<double> theta;
    if (is_single_step(p.variables)) {
        theta.push_back(std::log(bounds[0] / scale));
    } else {
        theta = encode_boundaries(bounds, scale);
    }
    if (is_joint(p.variables)) {
        const auto phi = encode_shape(c);
        theta.insert(theta.end(), phi.begin(), phi.end());
    }
    return theta;
}

std::pair<Constellation, Quantizer> decode_design(const DesignProblem& p, std::span<const double> theta)
{
    if (static_cast<int>(theta.size()) != p.dimension()) {
        throw std::invalid_argument("design coordinate count mismatch");
    }
    const double scale = boundary_scale(p);
    if (p.variables == DesignVariables::geometric_ratio) {
        const double rho = 1.0 / (1.0 + std::exp(-theta[0]));
        GeometricConstellation g(rho, p.order);
        const int nq = boundary_count(p.bits);
        std::vector<double> q(static_cast<std::size_t>(nq));
        q[0] = scale * std::exp(theta[1]);
        for (std::size_t y = 1; y < q.size(); ++y) {
            q[y] = q[y - 1] / rho;
        }
        return {g.materialize(), Quantizer(p.bits, std::move(q))};
    }
    const std::size_t nq = static_cast<std::size_t>(quantizer_dimension(p));
    Constellation c = is_joint(p.variables) ? decode_shape(theta.subspan(nq)) : reference_constellation(p);
    if (p.variables == DesignVariables::ratio_step_only) {
        const double ratio = min_amplitude_ratio(c);
        std::vector<double> q(static_cast<std::size_t>(boundary_count(p.bits)));
        q[0] = scale * std::exp(theta[0]);
        for (std::size_t y = 1; y < q.size(); ++y) {
            q[y] = q[y - 1] * ratio;
        }
        return {std::move(c), Quantizer(p.bits, std::move(q))};
    }
    Quantizer quant = is_uniform(p.variables)
                          ? UniformQuantizer(scale * std::exp(theta[0]), p.bits).materialize()
                          : Quantizer(p.bits, decode_boundaries(theta.subspan(0, nq), scale));
    return {std::move(c), std::move(quant)};
}

SepResult evaluate_design(const DesignProblem& p, const Constellation& c, const Quantizer& q)
{
    if (p.noiseless) {
        return sep_noiseless(c, q, p.channel);
    }
    const double snr = db_to_linear(p.snr_db);
    if (p.channel.integer_shape()) {
        return sep_closed_form(c, q, p.channel, snr);
    }
    return sep_quadrature(c, q, p.channel, snr);
}

DesignResult optimize(const DesignProblem& p)
{
    check_problem(p);
    const int dim = p.dimension();

    std::vector<std::vector<double>> starts;
    for (int j = 0; j < p.starts; ++j) {
        if (j == 0 && p.initial_quantizer) {
            starts.push_back(encode_design(p, reference_constellation(p), *p.initial_quantizer));
            continue;
        }
        const auto u = lhs_row(p.seed, j / kLhsBlock, j % kLhsBlock, std::max(dim, 2));
        starts.push_back(start_from_unit(p, u));
    }

    auto objective = [&p](std::span<const double> theta) {
        try {
            const auto [c, q] = decode_design(p, theta);
            const double v = evaluate_design(p, c, q).value;
            return std::log(std::max(v, 1e-300));
        } catch (const std::invalid_argument&) {
            return kInf;
        } catch (const NumericalError&) {
            return kInf;
        }
    };

    std::vector<NelderMeadResult> runs(starts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < starts.size(); j = next++) {
            runs[j] = nelder_mead(objective, starts[j], p.search);
        }
    };
    const int threads = std::clamp(p.threads, 1, static_cast<int>(starts.size()));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::size_t best = 0;
    for (std::size_t j = 1; j < runs.size(); ++j) {
        if (runs[j].value < runs[best].value) {
            best = j;
        }
    }
    if (!std::isfinite(runs[best].value)) {
        throw NumericalError("optimizer found no feasible design");
    }
    auto [c, q] = decode_design(p, runs[best].x);
    const SepResult sep = evaluate_design(p, c, q);
    return DesignResult{std::move(q), std::move(c), sep.value, sep.method, static_cast<int>(starts.size()),
                        runs[best].converged};
}

RatioDiagnostics check_geometric_ratio(const Quantizer& q, double rho)
{
    RatioDiagnostics d;
    const auto b = q.positive_boundaries();
    for (std::size_t y = 1; y < b.size(); ++y) {
        d.ratios.push_back(b[y - 1] / b[y]);
        d.max_deviation = std::max(d.max_deviation, std::abs(d.ratios.back() / rho - 1.0));
    }
    return d;
}

double shaping_tradeoff(double a, double b, double c, double sigma, double rho)
{
    return std::pow(sigma * sigma / std::pow(rho, b), c) + std::pow(rho, a);
}

double optimal_shaping_ratio(double a, double b, double c, double sigma)
{
    if (!(a > 0.0 && b > 0.0 && c > 0.0 && sigma > 0.0)) {
        throw std::invalid_argument("shaping exponents and sigma must be positive");
    }
    if (!(c < a + b * c)) {
        throw RegimeError("optimal shaping ratio needs C < A + BC");
    }
    const double denom = a + b * c;
    return std::pow(b * c / a, 1.0 / denom) * std::pow(sigma * sigma, c / denom);
}

}  // namespace pamq
