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

#include "job.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace pamq::cli {
namespace {

using nlohmann::json;

/// ConfigError tied to one top-level key, so file loading can point at its line.
class KeyError : public ConfigError
{
  public:
    KeyError(std::string key, const std::string& what) : ConfigError("field '" + key + "': " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::sep, "sep"},           {Command::optimize, "optimize"}, {Command::floor, "floor"},
    {Command::dvo, "dvo"},           {Command::simulate, "simulate"}, {Command::compare_aqnm, "compare-aqnm"},
};

double parse_number(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> number_list(const json& v)
{
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (v.is_string()) {
        return parse_grid(v.get<std::string>());
    }
    if (!v.is_array()) {
        throw ConfigError("expected a number, an array of numbers or a grid string");
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ConfigError("array elements must be numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> int_list(const json& v)
{
    std::vector<int> out;
    for (double x : number_list(v)) {
        if (std::floor(x) != x || std::abs(x) > 1e9) {
            throw ConfigError("expected integers");
        }
        out.push_back(static_cast<int>(x));
    }
    return out;
}

template <class T>
T integer(const json& v)
{
    if (!v.is_number_integer()) {
        throw ConfigError("expected an integer");
    }
    if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) {
            return v.get<T>();
        }
        if (v.get<std::int64_t>() < 0) {
            throw ConfigError("expected a nonnegative integer");
        }
    }
    return static_cast<T>(v.get<std::int64_t>());
}

bool boolean(const json& v)
{
    if (!v.is_boolean()) {
        throw ConfigError("expected true or false");
    }
    return v.get<bool>();
}

std::string string(const json& v)
{
    if (!v.is_string()) {
        throw ConfigError("expected a string");
    }
    return v.get<std::string>();
}

double number(const json& v)
{
    if (!v.is_number()) {
        throw ConfigError("expected a number");
    }
    return v.get<double>();
}

using Setter = std::function<void(JobConfig&, const json&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"command", [](JobConfig& j, const json& v) { j.command = command_from_string(string(v)); }},
        {"m", [](JobConfig& j, const json& v) { j.m = number_list(v); }},
        {"omega", [](JobConfig& j, const json& v) { j.omega = number_list(v); }},
        {"bits", [](JobConfig& j, const json& v) { j.bits = int_list(v); }},
        {"mod", [](JobConfig& j, const json& v) { j.mod = integer<int>(v); }},
        {"constellation", [](JobConfig& j, const json& v) { j.constellation = number_list(v); }},
        {"q", [](JobConfig& j, const json& v) { j.q = number_list(v); }},
        {"q-grid", [](JobConfig& j, const json& v) { j.q_grid = number_list(v); }},
        {"snr-db", [](JobConfig& j, const json& v) { j.snr_db = number_list(v); }},
        {"omega-snr", [](JobConfig& j, const json& v) { j.omega_snr = boolean(v); }},
        {"noiseless", [](JobConfig& j, const json& v) { j.noiseless = boolean(v); }},
        {"optimized", [](JobConfig& j, const json& v) { j.optimized = boolean(v); }},
        {"joint", [](JobConfig& j, const json& v) { j.joint = boolean(v); }},
        {"uniform", [](JobConfig& j, const json& v) { j.uniform = boolean(v); }},
        {"geometric", [](JobConfig& j, const json& v) { j.geometric = boolean(v); }},
        {"starts", [](JobConfig& j, const json& v) { j.starts = integer<int>(v); }},
        {"engine", [](JobConfig& j, const json& v) { j.engine = string(v); }},
        {"window",
         [](JobConfig& j, const json& v) {
             if (v.is_string() && std::count(v.get_ref<const std::string&>().begin(),
                                             v.get_ref<const std::string&>().end(), ':') == 1) {
                 const std::string& s = v.get_ref<const std::string&>();
                 const auto colon = s.find(':');
                 j.window = {parse_number(std::string_view(s).substr(0, colon)),
                             parse_number(std::string_view(s).substr(colon + 1))};
             } else {
                 j.window = number_list(v);
             }
         }},
        {"schedule", [](JobConfig& j, const json& v) { j.schedule = boolean(v); }},
        {"a", [](JobConfig& j, const json& v) { j.a = number(v); }},
        {"rho", [](JobConfig& j, const json& v) { j.rho = number_list(v); }},
        {"trials", [](JobConfig& j, const json& v) { j.trials = integer<std::uint64_t>(v); }},
        {"antennas", [](JobConfig& j, const json& v) { j.antennas = integer<int>(v); }},
        {"alpha", [](JobConfig& j, const json& v) { j.alpha = number(v); }},
        {"out", [](JobConfig& j, const json& v) { j.out = string(v); }},
        {"format",
         [](JobConfig& j, const json& v) {
             const std::string f = string(v);
             if (f == "auto") {
                 j.format = OutputFormat::automatic;
             } else if (f == "csv") {
                 j.format = OutputFormat::csv;
             } else if (f == "json") {
                 j.format = OutputFormat::json;
             } else {
                 throw ConfigError("format must be auto, csv or json");
             }
         }},
        {"seed", [](JobConfig& j, const json& v) { j.seed = integer<std::uint64_t>(v); }},
        {"threads", [](JobConfig& j, const json& v) { j.threads = integer<int>(v); }},
    };
    return table;
}

int line_of(const std::string& text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

bool is_power_of_two(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw ConfigError(what);
    }
}

void require_increasing_positive(const std::vector<double>& v, const std::string& what)
{
    double prev = 0.0;
    for (double x : v) {
        require(std::isfinite(x) && x > prev, what + " must be positive, finite and strictly increasing");
        prev = x;
    }
}

}  // namespace

const char* to_string(Command c)
{
    for (const auto& [cmd, name] : kCommands) {
        if (cmd == c) {
            return name;
        }
    }
    return "?";
}

Command command_from_string(const std::string& s)
{
    for (const auto& [cmd, name] : kCommands) {
        if (s == name) {
            return cmd;
        }
    }
    throw ConfigError("unknown command '" + s + "'");
}

std::vector<double> parse_grid(const std::string& text)
{
    const auto first = text.find(':');
    if (first == std::string::npos) {
        std::vector<double> out;
        std::string_view rest = text;
        while (true) {
            const auto comma = rest.find(',');
            out.push_back(parse_number(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        return out;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw ConfigError("grid must be start:step:stop, got '" + text + "'");
    }
    const double start = parse_number(std::string_view(text).substr(0, first));
    const double step = parse_number(std::string_view(text).substr(first + 1, second - first - 1));
    const double stop = parse_number(std::string_view(text).substr(second + 1));
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop - start)) {
        throw ConfigError("grid '" + text + "' needs step > 0 and stop >= start");
    }
    const double span = (stop - start) / step;
    if (span > 1e6) {
        throw ConfigError("grid '" + text + "' has too many points");
    }
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = start + static_cast<double>(k) * step;
    }
    return out;
}

std::vector<int> parse_int_grid(const std::string& text)
{
    return int_list(json(text));
}

json job_to_json(const JobConfig& j)
{
    return json{
        {"command", to_string(j.command)},
        {"m", j.m},
        {"omega", j.omega},
        {"bits", j.bits},
        {"mod", j.mod},
        {"constellation", j.constellation},
        {"q", j.q},
        {"q-grid", j.q_grid},
        {"snr-db", j.snr_db},
        {"omega-snr", j.omega_snr},
        {"noiseless", j.noiseless},
        {"optimized", j.optimized},
        {"joint", j.joint},
        {"uniform", j.uniform},
        {"geometric", j.geometric},
        {"starts", j.starts},
        {"engine", j.engine},
        {"window", j.window},
        {"schedule", j.schedule},
        {"a", j.a},
        {"rho", j.rho},
        {"trials", j.trials},
        {"antennas", j.antennas},
        {"alpha", j.alpha},
        {"out", j.out},
        {"format", j.format == OutputFormat::csv ? "csv" : j.format == OutputFormat::json ? "json" : "auto"},
        {"seed", j.seed},
        {"threads", j.threads},
    };
}

JobConfig job_from_json(const json& j, JobConfig base)
{
    if (!j.is_object()) {
        throw ConfigError("job config must be a JSON object");
    }
    const auto& table = setters();
    for (const auto& [key, value] : j.items()) {
        const auto it = table.find(key);
        if (it == table.end()) {
            throw KeyError(key, "unknown field");
        }
        try {
            it->second(base, value);
        } catch (const KeyError&) {
            throw;
        } catch (const std::exception& e) {
            throw KeyError(key, e.what());
        }
    }
    return base;
}

JobConfig load_job_file(const std::string& path, JobConfig base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw ConfigError(path + ":" + std::to_string(line_of(text, at)) + ": malformed JSON: " + e.what());
    }
    try {
        return job_from_json(j, std::move(base));
    } catch (const KeyError& e) {
        const auto at = text.find("\"" + e.key() + "\"");
        const int line = at == std::string::npos ? 1 : line_of(text, at);
        throw ConfigError(path + ":" + std::to_string(line) + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ":1: " + e.what());
    }
}

void validate(const JobConfig& j)
{
    require(!j.m.empty(), "m: at least one value required");
    for (double m : j.m) {
        require(std::isfinite(m) && m >= 0.5, "m must be >= 0.5");
    }
    require(!j.omega.empty(), "omega: at least one value required");
    for (double w : j.omega) {
        require(std::isfinite(w) && w > 0.0, "omega must be positive");
    }
    require(!j.bits.empty(), "bits: at least one value required");
    for (int b : j.bits) {
        require(b >= 2 && b <= 16, "bits must lie in [2, 16]");
    }
    require(j.mod >= 4 && is_power_of_two(j.mod), "mod must be a power of two >= 4");
    if (!j.constellation.empty()) {
        require(static_cast<int>(j.constellation.size()) * 2 == j.mod,
                "constellation needs mod/2 = " + std::to_string(j.mod / 2) + " positive amplitudes");
        require_increasing_positive(j.constellation, "constellation");
    }
    if (!j.q.empty()) {
        require(j.bits.size() == 1, "a fixed quantizer (--q) needs exactly one bits value");
        require(static_cast<int>(j.q.size()) == (1 << (j.bits[0] - 1)) - 1,
                "q needs 2^(bits-1) - 1 = " + std::to_string((1 << (j.bits[0] - 1)) - 1) + " boundaries");
        require_increasing_positive(j.q, "q");
    }
    for (double x : j.q_grid) {
        require(std::isfinite(x) && x > 0.0, "q-grid values must be positive");
    }
    for (double s : j.snr_db) {
        require(std::isfinite(s) && std::abs(s) <= 400.0, "snr-db values must be finite and within +/-400 dB");
    }
    require(j.starts >= 1, "starts must be >= 1");
    require(j.engine == "auto" || j.engine == "closed_form" || j.engine == "quadrature",
            "engine must be auto, closed_form or quadrature");
    require(j.window.size() == 2 && j.window[0] < j.window[1], "window must be lo:hi with lo < hi");
    require(std::isfinite(j.a) && j.a > 0.0, "a must be positive");
    for (double r : j.rho) {
        require(r > 0.0 && r < 1.0, "rho values must lie in (0, 1)");
    }
    require(j.trials >= 1, "trials must be >= 1");
    require(j.antennas >= 1 && j.antennas <= 64, "antennas must lie in [1, 64]");
    require(j.alpha < 0.0 || (j.alpha > 0.0 && j.alpha <= 1.0), "alpha must lie in (0, 1]");
    require(j.threads >= 0, "threads must be >= 0");
    require(!(j.geometric && (j.joint || j.uniform)), "geometric excludes joint and uniform");

    const bool has_snr = !j.snr_db.empty();
    switch (j.command) {
    case Command::sep: {
        const int sources = int(!j.q.empty()) + int(!j.q_grid.empty()) + int(j.optimized);
        require(sources == 1, "sep needs exactly one of --q, --q-grid or --optimized");
        require(j.q_grid.empty() || j.uniform || (j.bits.size() == 1 && j.bits[0] == 2),
                "q-grid sweeps q_1 of a 2-bit quantizer or, with --uniform, the step");
        require(has_snr || j.noiseless, "sep needs --snr-db or --noiseless");
        break;
    }
    case Command::optimize:
        require(has_snr != j.noiseless, "optimize needs exactly one of --snr-db or --noiseless");
        break;
    case Command::floor:
        if (j.schedule) {
            require(!j.rho.empty(), "floor --schedule needs --rho");
        }
        break;
    case Command::dvo:
        for (double m : j.m) {
            require(std::floor(m) == m, "dvo needs integer m");
        }
        require(!j.noiseless, "dvo is a finite-SNR experiment");
        break;
    case Command::simulate:
        require(has_snr || j.noiseless, "simulate needs --snr-db or --noiseless");
        require(!j.q.empty() || j.optimized, "simulate needs --q or --optimized");
        break;
    case Command::compare_aqnm:
        require(has_snr, "compare-aqnm needs --snr-db");
        require(j.bits.size() == 1, "compare-aqnm takes one bits value");
        break;
    }
}

int effective_threads(const JobConfig& job)
{
    if (job.threads > 0) {
        return job.threads;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

OutputFormat effective_format(const JobConfig& job)
{
    if (job.format != OutputFormat::automatic) {
        return job.format;
    }
    return job.command == Command::optimize || job.command == Command::dvo ? OutputFormat::json : OutputFormat::csv;
}

}  // namespace pamq::cli
