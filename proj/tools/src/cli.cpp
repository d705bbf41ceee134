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

#include "cli.hpp"

#include "commands.hpp"
#include "job.hpp"

#include "pamq/sep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

namespace pamq::cli {
namespace {

using nlohmann::json;

constexpr const char* kCommandHelp = "sep | optimize | floor | dvo | simulate | compare-aqnm";

struct Flags
{
    std::string command;
    std::string config;
    bool dump_config = false;
    std::map<std::string, std::string> text;  // list/grid/string options, JSON key -> raw text
    std::map<std::string, bool> switches;
    std::optional<std::int64_t> mod, starts, antennas, threads;
    std::optional<std::uint64_t> seed;
    std::optional<double> a, alpha;
};

void add_options(CLI::App& app, Flags& f)
{
    app.add_option("command", f.command, kCommandHelp);
    app.add_option("--config", f.config, "JSON job file; flags given on the command line take precedence");
    app.add_flag("--dump-config", f.dump_config, "print the resolved job as JSON and exit");

    const std::pair<const char*, const char*> text_options[] = {
        {"m", "Nakagami shape(s), list or start:step:stop"},
        {"omega", "fading spread(s)"},
        {"bits", "ADC resolution(s)"},
        {"constellation", "positive amplitudes rho_0,...; default 1,3,5,..."},
        {"q", "fixed positive quantizer boundaries"},
        {"q-grid", "sweep of q_1 (2-bit) or of the uniform step"},
        {"snr-db", "SNR grid in dB, start:step:stop"},
        {"window", "fit window lo:hi in dB"},
        {"rho", "geometric ratios for floor --schedule"},
        {"trials", "Monte Carlo trials per point"},
        {"engine", "auto | closed_form | quadrature"},
        {"format", "auto | csv | json"},
        {"out", "output file (default stdout)"},
    };
    for (const auto& [key, help] : text_options) {
        app.add_option_function<std::string>(
            std::string("--") + key, [&f, k = std::string(key)](const std::string& v) { f.text[k] = v; }, help);
    }
    const std::pair<const char*, const char*> switch_options[] = {
        {"noiseless", "sigma^2 = 0"},
        {"omega-snr", "read --snr-db as omega * SNR"},
        {"optimized", "optimize the quantizer at every SNR point"},
        {"joint", "optimize constellation and quantizer together"},
        {"uniform", "uniform quantizer"},
        {"geometric", "geometric constellation with ratio-structured boundaries"},
        {"schedule", "floor bound along a rho schedule"},
    };
    for (const auto& [key, help] : switch_options) {
        app.add_flag_callback(
            std::string("--") + key, [&f, k = std::string(key)] { f.switches[k] = true; }, help);
    }
    app.add_option("--mod", f.mod, "modulation order M");
    app.add_option("--starts", f.starts, "optimizer multi-start count");
    app.add_option("--antennas", f.antennas, "receive antennas N_r");
    app.add_option("--threads", f.threads, "worker threads (0 = all cores)");
    app.add_option("--seed", f.seed, "master seed (PAMQ_SEED overrides a config file seed)");
    app.add_option("--a", f.a, "schedule exponent a");
    app.add_option("--alpha", f.alpha, "AQNM distortion factor (default: Lloyd-Max table)");
}

json flags_to_json(const Flags& f)
{
    json j = json::object();
    if (!f.command.empty()) {
        j["command"] = f.command;
    }
    for (const auto& [k, v] : f.text) {
        if (k == "trials") {
            // accept 1e6 as well as 1000000
            std::size_t used = 0;
            double t = 0.0;
            try {
                t = std::stod(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != v.size() || !(t >= 1.0) || t > 9e18 || std::floor(t) != t) {
                throw ConfigError("field 'trials': expected a positive integer, got '" + v + "'");
            }
            j[k] = static_cast<std::uint64_t>(t);
        } else {
            j[k] = v;
        }
    }
    for (const auto& [k, v] : f.switches) {
        j[k] = v;
    }
    if (f.mod) j["mod"] = *f.mod;
    if (f.starts) j["starts"] = *f.starts;
    if (f.antennas) j["antennas"] = *f.antennas;
    if (f.threads) j["threads"] = *f.threads;
    if (f.seed) j["seed"] = *f.seed;
    if (f.a) j["a"] = *f.a;
    if (f.alpha) j["alpha"] = *f.alpha;
    return j;
}

std::optional<std::uint64_t> env_seed()
{
    const char* s = std::getenv("PAMQ_SEED");
    if (s == nullptr || *s == '\0') {
        return std::nullopt;
    }
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || *end != '\0' || *s == '-') {
        throw ConfigError("PAMQ_SEED must be a nonnegative integer, got '" + std::string(s) + "'");
    }
    return v;
}

void write_output(const JobConfig& job, const std::string& text, std::ostream& out)
{
    if (job.out.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(job.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw ConfigError("cannot open output file '" + job.out + "'");
    }
    f << text;
    if (!f.flush()) {
        throw std::runtime_error("failed writing '" + job.out + "'");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Low-resolution ADC PAM receivers over Nakagami-m fading: SEP, design and diversity tools", "pamq"};
    Flags flags;
    add_options(app, flags);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    JobConfig job;
    try {
        if (!flags.config.empty()) {
            job = load_job_file(flags.config);
        }
        if (const auto seed = env_seed()) {
            job.seed = *seed;
        }
        job = job_from_json(flags_to_json(flags), job);
        if (flags.command.empty() && flags.config.empty()) {
            throw ConfigError(std::string("missing command (") + kCommandHelp + ")");
        }
        if (flags.dump_config) {
            out << job_to_json(job).dump(2) << '\n';
            return 0;
        }
        validate(job);
        const CommandOutput result = run_command(job);
        write_output(job, render(result, effective_format(job)), out);
        if (!result.warning.empty()) {
            err << "pamq: warning: " << result.warning << '\n';
        }
        return result.numerical_failure ? 2 : 0;
    } catch (const NumericalError& e) {
        err << "pamq: numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "pamq: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "pamq: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        err << "pamq: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "pamq: error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace pamq::cli
