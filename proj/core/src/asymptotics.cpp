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

#include "pamq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pamq {
namespace {

DvoEstimate least_squares(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi)
{
    if (x.size() < 4) {
        throw std::invalid_argument("slope fit needs at least 4 usable points in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] dB, got " + std::to_string(x.size()));
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    DvoEstimate e;
    e.slope = sxy / sxx;
    e.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    e.window_lo_db = lo;
    e.window_hi_db = hi;
    e.points = static_cast<int>(x.size());
    return e;
}

bool in_window(double snr_db, double lo, double hi)
{
    return snr_db >= lo - 1e-9 && snr_db <= hi + 1e-9;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    const std::int64_t g = std::gcd(n, d);
    num = (d < 0 ? -n : n) / g;
    den = (d < 0 ? -d : d) / g;
}

std::string Rational::str() const
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(Rational a, Rational b)
{
    return Rational(a.num * b.num, a.den * b.den);
}

const char* to_string(QuantizerKind k)
{
    return k == QuantizerKind::uniform ? "uniform" : "nonuniform";
}

QuantizerKind quantizer_kind_from_string(const std::string& s)
{
    if (s == "uniform") {
        return QuantizerKind::uniform;
    }
    if (s == "nonuniform") {
        return QuantizerKind::nonuniform;
    }
    throw std::invalid_argument("unknown quantizer kind '" + s + "'");
}

Rational dvo_theory(int m, int bits, int order, QuantizerKind kind, int antennas)
{
    if (m < 1 || antennas < 1) {
        throw std::invalid_argument("decay exponent needs integer m >= 1 and at least one antenna");
    }
    if (bits < 2 || bits > 30) {
        throw std::invalid_argument("resolution must be between 2 and 30 bits");
    }
    if (kind == QuantizerKind::uniform) {
        if (order != 4) {
            throw RegimeError("uniform-quantizer decay exponent is known for M = 4 only");
        }
        if (antennas != 1) {
            throw RegimeError("uniform-quantizer decay exponent is known for a single antenna only");
        }
        return Rational(m, 2);
    }
    const std::int64_t levels = std::int64_t{1} << bits;
    if (!(levels > order - 2)) {
        throw RegimeError("decay exponent needs 2^b > M - 2");
    }
    return Rational(std::int64_t{m} * antennas * (levels - order + 2), levels);
}

DvoEstimate dvo_fit(std::span<const CurvePoint> curve, double lo_db, double hi_db)
{
    std::vector<double> x, y;
    for (const auto& p : curve) {
        if (in_window(p.snr_db, lo_db, hi_db) && p.sep >= kSepFitFloor) {
            x.push_back(p.snr_db / 10.0);
            y.push_back(-std::log10(p.sep));
        }
    }
    return least_squares(x, y, lo_db, hi_db);
}

DvoEstimate dvo_fit(std::span<const SimEstimate> curve, double lo_db, double hi_db)
{
    std::vector<double> x, y;
    for (const auto& p : curve) {
        if (in_window(p.snr_db, lo_db, hi_db) && p.errors >= kMinFitErrors) {
            x.push_back(p.snr_db / 10.0);
            y.push_back(-std::log10(p.sep_hat));
        }
    }
    return least_squares(x, y, lo_db, hi_db);
}

DqEstimate dq_metric(const std::function<double(int)>& floor_fn, int b_lo, int b_hi)
{
    if (b_hi - b_lo < 1) {
        throw std::invalid_argument("D_Q fit needs at least two resolutions");
    }
    std::vector<double> x, y;
    for (int b = b_lo; b <= b_hi; ++b) {
        const double p = floor_fn(b);
        if (!(p > 0.0)) {
            throw std::invalid_argument("floor must be positive at b = " + std::to_string(b));
        }
        x.push_back(b);
        y.push_back(-std::log2(p));
    }
    DqEstimate d;
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    d.slope = sxy / sxx;
    for (std::size_t k = 1; k < y.size(); ++k) {
        d.successive_slopes.push_back(y[k] - y[k - 1]);
    }
    d.slopes_increasing = true;
    for (std::size_t k = 1; k < d.successive_slopes.size(); ++k) {
        d.slopes_increasing = d.slopes_increasing && d.successive_slopes[k] > d.successive_slopes[k - 1];
    }
    return d;
}

std::vector<SchedulePoint> floor_schedule(std::span<const double> rhos, double a, int bits, int order,
                                          const ChannelModel& ch, FloorKind kind)
{
    const double lo = kind == FloorKind::ratio ? order - 2.0 : 2.0;
    const double hi = kind == FloorKind::ratio ? std::ldexp(1.0, bits) : 4.0;
    if (!(a > lo && a < hi)) {
        throw RegimeError("schedule exponent a = " + std::to_string(a) + " must lie in (" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
    }
    std::vector<SchedulePoint> out;
    for (double rho : rhos) {
        const GeometricConstellation g(rho, order);
        const double c = g.normalizer();
        const double q = c * std::pow(rho, 0.5 * a);
        out.push_back({rho, q, floor_geometric(g, q, ch, bits, kind)});
    }
    return out;
}

DesignResult optimal_floor(const Constellation& c, const ChannelModel& ch, int bits, QuantizerKind kind,
                           int starts, std::uint64_t seed)
{
    DesignProblem p;
    p.channel = ch;
    p.channel.sigma2 = 0.0;
    p.order = c.order();
    p.bits = bits;
    p.noiseless = true;
    p.starts = starts;
    p.seed = seed;
    p.constellation = c;
    p.variables =
        kind == QuantizerKind::uniform ? DesignVariables::uniform_step_only : DesignVariables::ratio_step_only;
    return optimize(p);
}

DvoExperimentResult dvo_experiment(const DvoExperimentSpec& spec)
{
    DvoExperimentResult out;
    out.theory = dvo_theory(spec.m, spec.bits, spec.order, spec.kind, spec.antennas);
    if (spec.kind == QuantizerKind::uniform && spec.antennas != 1) {
        throw RegimeError("multi-antenna experiments use non-uniform quantizers");
    }
    std::vector<double> grid = spec.snr_db;
    std::sort(grid.begin(), grid.end());

    DesignProblem base;
    base.channel = ChannelModel{static_cast<double>(spec.m), spec.omega, 0.0};
    base.order = spec.order;
    base.bits = spec.bits;
    base.variables =
        spec.kind == QuantizerKind::uniform ? DesignVariables::joint_uniform : DesignVariables::joint_nonuniform;
    base.seed = spec.seed;
    base.threads = spec.threads;
    base.starts = spec.starts;

    for (std::size_t k = 0; k < grid.size(); ++k) {
        DesignProblem p = base;
        p.snr_db = grid[k];
        std::vector<DesignResult> candidates;
        if (k == 0) {
            candidates.push_back(optimize(p));
        }
        std::vector<std::pair<Constellation, Quantizer>> warm;
        if (k > 0) {
            warm.emplace_back(out.designs.back().constellation, out.designs.back().quantizer);
        }
        if (spec.kind == QuantizerKind::nonuniform) {
            DesignProblem g = p;
            g.variables = DesignVariables::geometric_ratio;
            const DesignResult gr = optimize(g);
            warm.emplace_back(gr.constellation, gr.quantizer);
        }
        for (auto& [c, q] : warm) {
            DesignProblem w = p;
            w.starts = 1;
            w.constellation = c;
            w.initial_quantizer = q;
            candidates.push_back(optimize(w));
        }
        const auto best = std::min_element(candidates.begin(), candidates.end(),
                                           [](const DesignResult& a, const DesignResult& b) { return a.sep < b.sep; });
        out.designs.push_back(*best);
        out.curve.push_back({grid[k], best->sep, best->method});
    }

    if (spec.antennas == 1) {
        out.estimate = dvo_fit(std::span<const CurvePoint>(out.curve), spec.window_lo_db, spec.window_hi_db);
        return out;
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        SimSpec s(out.designs[k].constellation, out.designs[k].quantizer, base.channel);
        s.snr_db = {grid[k]};
        s.trials = spec.mc_trials;
        s.antennas = spec.antennas;
        s.seed = spec.seed + k;
        s.threads = spec.threads;
        out.simulated.push_back(simulate(s).front());
        out.simulated.back().snr_db = grid[k];
    }
    out.estimate = dvo_fit(std::span<const SimEstimate>(out.simulated), spec.window_lo_db, spec.window_hi_db);
    return out;
}

}  // namespace pamq
