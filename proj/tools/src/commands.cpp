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

#include "commands.hpp"

#include "pamq/asymptotics.hpp"
#include "pamq/lloyd_max.hpp"
#include "pamq/montecarlo.hpp"
#include "pamq/optimizer.hpp"
#include "pamq/sep.hpp"
#include "pamq/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace pamq::cli {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

Constellation make_constellation(const JobConfig& job)
{
    if (job.constellation.empty()) {
        return Constellation::equidistant(job.mod);
    }
    return Constellation(job.constellation);
}

/// Grid value to the SNR actually simulated, in dB.
double actual_snr_db(const JobConfig& job, double grid_db, double omega)
{
    return job.omega_snr ? grid_db - linear_to_db(omega) : grid_db;
}

std::vector<double> to_vector(std::span<const double> s)
{
    return {s.begin(), s.end()};
}

SepResult evaluate(const JobConfig& job, const Constellation& c, const Quantizer& q, const ChannelModel& ch,
                   double snr_db)
{
    if (snr_db == kInf) {
        return sep_noiseless(c, q, ch);
    }
    const double snr = db_to_linear(snr_db);
    if (job.engine == "quadrature" || (job.engine == "auto" && !ch.integer_shape())) {
        return sep_quadrature(c, q, ch, snr);
    }
    if (!ch.integer_shape()) {
        throw ConfigError("the closed-form engine needs integer m");
    }
    return sep_closed_form(c, q, ch, snr);
}

DesignVariables variables_of(const JobConfig& job)
{
    if (job.geometric) {
        return DesignVariables::geometric_ratio;
    }
    if (job.joint) {
        return job.uniform ? DesignVariables::joint_uniform : DesignVariables::joint_nonuniform;
    }
    return job.uniform ? DesignVariables::uniform_step_only : DesignVariables::quantizer_only;
}

DesignProblem base_problem(const JobConfig& job, const ChannelModel& ch, int bits, DesignVariables vars)
{
    DesignProblem p;
    p.channel = ch;
    p.order = job.mod;
    p.bits = bits;
    p.variables = vars;
    p.starts = job.starts;
    p.seed = job.seed;
    p.threads = effective_threads(job);
    const bool joint = vars == DesignVariables::joint_nonuniform || vars == DesignVariables::joint_uniform ||
                       vars == DesignVariables::geometric_ratio;
    if (!joint || !job.constellation.empty()) {
        p.constellation = make_constellation(job);
    }
    return p;
}

/// One optimum per SNR point (inf = noiseless), in grid order. Each point
/// also tries the previous optimum as a single warm start and keeps the better.
std::vector<DesignResult> optimize_sweep(const JobConfig& job, const ChannelModel& ch, int bits,
                                         DesignVariables vars, const std::vector<double>& snr_db)
{
    std::vector<DesignResult> out;
    for (double s : snr_db) {
        DesignProblem p = base_problem(job, ch, bits, vars);
        p.noiseless = s == kInf;
        p.snr_db = p.noiseless ? 0.0 : s;
        DesignResult best = optimize(p);
        if (!out.empty()) {
            DesignProblem w = p;
            w.starts = 1;
            w.constellation = out.back().constellation;
            w.initial_quantizer = out.back().quantizer;
            DesignResult warm = optimize(w);
            if (warm.sep < best.sep) {
                warm.starts_used += best.starts_used;
                best = std::move(warm);
            }
        }
        out.push_back(std::move(best));
    }
    return out;
}

std::vector<double> snr_points(const JobConfig& job)
{
    return job.noiseless ? std::vector<double>{kInf} : job.snr_db;
}

CommandOutput run_sep(const JobConfig& job)
{
    Table t{{"omega", "m", "bits", "q1", "snr_db", "sep", "method", "abs_error_est"}, {}};
    const Constellation c = make_constellation(job);
    for (double omega : job.omega) {
        for (double m : job.m) {
            const ChannelModel ch{m, omega, 0.0};
            for (int bits : job.bits) {
                auto emit = [&](const Quantizer& q, double grid_db, const SepResult& r) {
                    t.add({omega, m, std::int64_t{bits}, q.boundary(1), grid_db, r.value, std::string(to_string(r.method)),
                           r.abs_error_est});
                };
                const auto grid = snr_points(job);
                if (job.optimized) {
                    std::vector<double> actual;
                    for (double s : grid) {
                        actual.push_back(s == kInf ? kInf : actual_snr_db(job, s, omega));
                    }
                    const auto designs = optimize_sweep(job, ch, bits, variables_of(job), actual);
                    for (std::size_t k = 0; k < grid.size(); ++k) {
                        emit(designs[k].quantizer, grid[k], evaluate(job, c, designs[k].quantizer, ch, actual[k]));
                    }
                    continue;
                }
                std::vector<Quantizer> quantizers;
                if (!job.q.empty()) {
                    quantizers.emplace_back(bits, job.q);
                }
                for (double g : job.q_grid) {
                    quantizers.push_back(job.uniform ? UniformQuantizer(g, bits).materialize() : Quantizer(bits, {g}));
                }
                for (const auto& q : quantizers) {
                    for (double s : grid) {
                        emit(q, s, evaluate(job, c, q, ch, s == kInf ? kInf : actual_snr_db(job, s, omega)));
                    }
                }
            }
        }
    }
    return {std::move(t), false, {}};
}

CommandOutput run_optimize(const JobConfig& job)
{
    Table t{{"omega", "m", "bits", "snr_db", "sep", "method", "converged", "starts_used", "boundaries", "amplitudes"},
            {}};
    json docs = json::array();
    bool failed = false;
    const auto grid = snr_points(job);
    for (double omega : job.omega) {
        for (double m : job.m) {
            const ChannelModel ch{m, omega, 0.0};
            for (int bits : job.bits) {
                std::vector<double> actual;
                for (double s : grid) {
                    actual.push_back(s == kInf ? kInf : actual_snr_db(job, s, omega));
                }
                const auto designs = optimize_sweep(job, ch, bits, variables_of(job), actual);
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    const DesignResult& r = designs[k];
                    failed = failed || !r.converged;
                    t.add({omega, m, std::int64_t{bits}, grid[k], r.sep, std::string(to_string(r.method)),
                           std::int64_t{r.converged}, std::int64_t{r.starts_used},
                           join(to_vector(r.quantizer.positive_boundaries())),
                           join(to_vector(r.constellation.amplitudes()))});
                    DesignProblem p = base_problem(job, ch, bits, variables_of(job));
                    p.noiseless = actual[k] == kInf;
                    p.snr_db = p.noiseless ? 0.0 : actual[k];
                    docs.push_back(json{{"problem", to_json(p)}, {"result", to_json(r)}});
                }
            }
        }
    }
    CommandOutput out{std::move(t), failed, failed ? "optimizer stopped on the iteration limit" : ""};
    if (effective_format(job) == OutputFormat::json) {
        out.body = docs.size() == 1 ? docs.front() : docs;
    }
    return out;
}

CommandOutput run_floor(const JobConfig& job)
{
    const QuantizerKind kind = job.uniform ? QuantizerKind::uniform : QuantizerKind::nonuniform;
    if (job.schedule) {
        Table t{{"omega", "m", "bits", "kind", "a", "rho", "q_param", "bound"}, {}};
        const FloorKind fk = job.uniform ? FloorKind::uniform : FloorKind::ratio;
        for (double omega : job.omega) {
            for (double m : job.m) {
                for (int bits : job.bits) {
                    for (const auto& pt : floor_schedule(job.rho, job.a, bits, job.mod, ChannelModel{m, omega, 0.0}, fk)) {
                        t.add({omega, m, std::int64_t{bits}, std::string(to_string(kind)), job.a, pt.rho, pt.q_param,
                               pt.bound});
                    }
                }
            }
        }
        return {std::move(t), false, {}};
    }

    Table t{{"omega", "m", "bits", "kind", "floor", "f_lower", "f_upper", "q1", "converged"}, {}};
    json dq = json::array();
    bool failed = false;
    std::string warning;
    const Constellation c = make_constellation(job);
    for (double omega : job.omega) {
        for (double m : job.m) {
            const ChannelModel ch{m, omega, 0.0};
            std::map<int, double> floors;
            for (int bits : job.bits) {
                const DesignResult r = optimal_floor(c, ch, bits, kind, job.starts, job.seed);
                const FloorBounds fb = floor_bounds(c, r.quantizer, ch);
                failed = failed || !r.converged;
                floors[bits] = r.sep;
                t.add({omega, m, std::int64_t{bits}, std::string(to_string(kind)), r.sep, fb.lower, fb.upper,
                       r.quantizer.boundary(1), std::int64_t{r.converged}});
            }
            const int lo = floors.begin()->first;
            const int hi = floors.rbegin()->first;
            const bool representable =
                std::all_of(floors.begin(), floors.end(), [](const auto& f) { return f.second > 0.0; });
            if (!representable) {
                warning = "floor underflows double precision; D_Q summary skipped";
            } else if (hi > lo && static_cast<int>(floors.size()) == hi - lo + 1) {
                const DqEstimate e = dq_metric([&](int b) { return floors.at(b); }, lo, hi);
                dq.push_back(json{{"omega", omega},
                                  {"m", m},
                                  {"slope", e.slope},
                                  {"successive_slopes", e.successive_slopes},
                                  {"slopes_increasing", e.slopes_increasing}});
            }
        }
    }
    CommandOutput out{std::move(t), failed, failed ? "optimizer stopped on the iteration limit" : warning};
    if (effective_format(job) == OutputFormat::json) {
        out.body = json{{"rows", table_to_json(std::get<Table>(out.body))}, {"dq", dq}};
    }
    return out;
}

CommandOutput run_dvo(const JobConfig& job)
{
    Table t{{"m", "omega", "bits", "antennas", "snr_db", "sep", "method", "trials", "errors", "boundaries",
             "amplitudes"},
            {}};
    json docs = json::array();
    bool failed = false;
    for (double omega : job.omega) {
        for (double m : job.m) {
            for (int bits : job.bits) {
                DvoExperimentSpec spec;
                spec.m = static_cast<int>(m);
                spec.omega = omega;
                spec.bits = bits;
                spec.order = job.mod;
                spec.kind = job.uniform ? QuantizerKind::uniform : QuantizerKind::nonuniform;
                spec.antennas = job.antennas;
                spec.window_lo_db = job.window[0];
                spec.window_hi_db = job.window[1];
                spec.snr_db = job.snr_db.empty() ? parse_grid(std::to_string(job.window[0]) + ":5:" +
                                                              std::to_string(job.window[1]))
                                                  : job.snr_db;
                spec.starts = job.starts;
                spec.seed = job.seed;
                spec.threads = effective_threads(job);
                spec.mc_trials = job.trials;
                const DvoExperimentResult r = dvo_experiment(spec);

                json curve = json::array();
                for (std::size_t k = 0; k < r.curve.size(); ++k) {
                    const auto& d = r.designs[k];
                    failed = failed || !d.converged;
                    json pt{{"snr_db", r.curve[k].snr_db},
                            {"sep", r.curve[k].sep},
                            {"method", to_string(r.curve[k].method)},
                            {"quantizer", to_json(d.quantizer)},
                            {"constellation", to_json(d.constellation)}};
                    std::int64_t trials = 0;
                    std::int64_t errors = 0;
                    double sep = r.curve[k].sep;
                    std::string method = to_string(r.curve[k].method);
                    if (!r.simulated.empty()) {
                        const SimEstimate& s = r.simulated[k];
                        pt["simulated"] = json{{"sep_hat", s.sep_hat},
                                               {"trials", s.trials},
                                               {"errors", s.errors},
                                               {"std_error", s.std_error}};
                        trials = static_cast<std::int64_t>(s.trials);
                        errors = static_cast<std::int64_t>(s.errors);
                        sep = s.sep_hat;
                        method = to_string(SepMethod::monte_carlo);
                    }
                    curve.push_back(std::move(pt));
                    t.add({m, omega, std::int64_t{bits}, std::int64_t{job.antennas}, r.curve[k].snr_db, sep, method,
                           trials, errors, join(to_vector(d.quantizer.positive_boundaries())),
                           join(to_vector(d.constellation.amplitudes()))});
                }
                docs.push_back(json{{"m", spec.m},
                                    {"omega", omega},
                                    {"bits", bits},
                                    {"mod", job.mod},
                                    {"kind", to_string(spec.kind)},
                                    {"antennas", job.antennas},
                                    {"slope", r.estimate.slope},
                                    {"r2", r.estimate.r2},
                                    {"points", r.estimate.points},
                                    {"window", {r.estimate.window_lo_db, r.estimate.window_hi_db}},
                                    {"theory", r.theory.str()},
                                    {"theory_value", r.theory.value()},
                                    {"curve", std::move(curve)}});
            }
        }
    }
    CommandOutput out{std::move(t), failed, failed ? "optimizer stopped on the iteration limit" : ""};
    if (effective_format(job) == OutputFormat::json) {
        out.body = docs.size() == 1 ? docs.front() : docs;
    }
    return out;
}

CommandOutput run_simulate(const JobConfig& job)
{
    Table t{{"omega", "m", "bits", "antennas", "snr_db", "trials", "errors", "sep_hat", "std_error", "sep_theory"}, {}};
    const Constellation c = make_constellation(job);
    const auto grid = snr_points(job);
    for (double omega : job.omega) {
        for (double m : job.m) {
            const ChannelModel ch{m, omega, 0.0};
            for (int bits : job.bits) {
                std::vector<double> actual;
                for (double s : grid) {
                    actual.push_back(s == kInf ? kInf : actual_snr_db(job, s, omega));
                }
                std::vector<Quantizer> quantizers;
                if (job.optimized) {
                    for (auto& d : optimize_sweep(job, ch, bits, variables_of(job), actual)) {
                        quantizers.push_back(std::move(d.quantizer));
                    }
                } else {
                    quantizers.assign(grid.size(), Quantizer(bits, job.q));
                }
                std::vector<SimEstimate> estimates(grid.size());
                auto spec_for = [&](const Quantizer& q) {
                    SimSpec s(c, q, ch);
                    s.trials = job.trials;
                    s.antennas = job.antennas;
                    s.seed = job.seed;
                    s.threads = effective_threads(job);
                    return s;
                };
                if (job.optimized) {
                    // a different quantizer per point: seed offset k stands in for the point stream
                    for (std::size_t k = 0; k < grid.size(); ++k) {
                        SimSpec s = spec_for(quantizers[k]);
                        s.seed = job.seed + k;
                        s.snr_db = {actual[k]};
                        estimates[k] = actual[k] == kInf ? simulate_noiseless(s) : simulate(s).front();
                    }
                } else if (actual.front() == kInf) {
                    estimates[0] = simulate_noiseless(spec_for(quantizers[0]));
                } else {
                    SimSpec s = spec_for(quantizers[0]);
                    s.snr_db = actual;
                    estimates = simulate(s);
                }
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    const SimEstimate& e = estimates[k];
                    const double theory =
                        job.antennas == 1 ? evaluate(job, c, quantizers[k], ch, actual[k]).value
                                          : std::numeric_limits<double>::quiet_NaN();
                    t.add({omega, m, std::int64_t{bits}, std::int64_t{job.antennas}, grid[k],
                           static_cast<std::int64_t>(e.trials), static_cast<std::int64_t>(e.errors), e.sep_hat,
                           e.std_error, theory});
                }
            }
        }
    }
    return {std::move(t), false, {}};
}

CommandOutput run_compare_aqnm(const JobConfig& job)
{
    Table t{{"omega", "m", "bits", "snr_db", "sep_exact", "sep_aqnm", "alpha", "ratio", "q1"}, {}};
    const int bits = job.bits.front();
    // the baseline adds E_s to a dimensionless SINR; unit symbol energy makes both readings agree
    const Constellation raw = make_constellation(job);
    const double scale = 1.0 / std::sqrt(symbol_energy(raw));
    const Constellation c = raw.scaled(scale);
    const double alpha = job.alpha > 0.0 ? job.alpha : aqnm_alpha(bits);
    for (double omega : job.omega) {
        for (double m : job.m) {
            const ChannelModel ch{m, omega, 0.0};
            std::vector<double> actual;
            for (double s : job.snr_db) {
                actual.push_back(actual_snr_db(job, s, omega));
            }
            std::vector<Quantizer> quantizers;
            if (!job.q.empty()) {
                quantizers.assign(actual.size(), Quantizer(bits, job.q).scaled(scale));
            } else {
                JobConfig fixed = job;
                fixed.constellation = to_vector(c.amplitudes());
                for (auto& d : optimize_sweep(fixed, ch, bits, DesignVariables::quantizer_only, actual)) {
                    quantizers.push_back(std::move(d.quantizer));
                }
            }
            for (std::size_t k = 0; k < actual.size(); ++k) {
                const double exact = evaluate(job, c, quantizers[k], ch, actual[k]).value;
                const double aqnm = sep_aqnm(c, db_to_linear(actual[k]), alpha).value;
                t.add({omega, m, std::int64_t{bits}, job.snr_db[k], exact, aqnm, alpha, aqnm / exact,
                       quantizers[k].boundary(1)});
            }
        }
    }
    return {std::move(t), false, {}};
}

}  // namespace

CommandOutput run_command(const JobConfig& job)
{
    switch (job.command) {
    case Command::sep:
        return run_sep(job);
    case Command::optimize:
        return run_optimize(job);
    case Command::floor:
        return run_floor(job);
    case Command::dvo:
        return run_dvo(job);
    case Command::simulate:
        return run_simulate(job);
    case Command::compare_aqnm:
        return run_compare_aqnm(job);
    }
    throw ConfigError("unknown command");
}

std::string render(const CommandOutput& out, OutputFormat format)
{
    if (const auto* doc = std::get_if<json>(&out.body)) {
        return doc->dump(2) + "\n";
    }
    const Table& t = std::get<Table>(out.body);
    if (format == OutputFormat::json) {
        return table_to_json(t).dump(2) + "\n";
    }
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

}  // namespace pamq::cli
