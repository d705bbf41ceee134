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

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pamq::cli {

enum class Command
{
    sep,
    optimize,
    floor,
    dvo,
    simulate,
    compare_aqnm,
};

const char* to_string(Command c);
Command command_from_string(const std::string& s);

enum class OutputFormat
{
    automatic,  ///< JSON for optimize and dvo, CSV otherwise
    csv,
    json,
};

/// Fully resolved job. Every field has a JSON key of the same name with
/// dashes in place of underscores (the long flag name).
struct JobConfig
{
    Command command = Command::sep;

    // system
    std::vector<double> m{1.0};
    std::vector<double> omega{1.0};
    std::vector<int> bits{2};
    int mod = 4;
    std::vector<double> constellation;  ///< positive half; empty = {1, 3, 5, ...}
    std::vector<double> q;              ///< fixed positive boundaries
    std::vector<double> q_grid;         ///< sweep of q_1 (2-bit) or of the uniform step

    // sweep
    std::vector<double> snr_db;
    bool omega_snr = false;  ///< snr_db holds omega * SNR
    bool noiseless = false;

    // design
    bool optimized = false;
    bool joint = false;
    bool uniform = false;
    bool geometric = false;
    int starts = 16;
    std::string engine = "auto";  ///< auto | closed_form | quadrature

    // asymptotics
    std::vector<double> window{20.0, 50.0};
    bool schedule = false;
    double a = 4.0;
    std::vector<double> rho;

    // simulation
    std::uint64_t trials = 1'000'000;
    int antennas = 1;
    double alpha = -1.0;  ///< < 0 selects the Lloyd-Max table

    // output
    std::string out;  ///< empty = stdout
    OutputFormat format = OutputFormat::automatic;
    std::uint64_t seed = 1;
    int threads = 0;  ///< 0 = available parallelism

    bool operator==(const JobConfig&) const = default;
};

/// Validation failure; exit code 1.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

nlohmann::json job_to_json(const JobConfig& job);

/// Applies the keys of j on top of base. Unknown keys and ill-typed values
/// throw ConfigError naming the key.
JobConfig job_from_json(const nlohmann::json& j, JobConfig base = {});

/// Reads a JSON job file. Errors carry "path:line: " prefixes.
JobConfig load_job_file(const std::string& path, JobConfig base = {});

/// "start:step:stop" (inclusive), "a,b,c" or a single number.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_grid(const std::string& text);

void validate(const JobConfig& job);

int effective_threads(const JobConfig& job);
OutputFormat effective_format(const JobConfig& job);

}  // namespace pamq::cli
