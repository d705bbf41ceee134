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

#include "pamq/serialize.hpp"

#include <stdexcept>
#include <string>

namespace pamq {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const char* where)
{
    if (!j.is_object()) {
        throw std::invalid_argument(std::string(where) + ": expected a JSON object");
    }
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            throw std::invalid_argument(std::string(where) + ": unknown field '" + item.key() + "'");
        }
    }
}

json to_json(const Constellation& c)
{
    return json{{"amplitudes", std::vector<double>(c.amplitudes().begin(), c.amplitudes().end())}};
}

json to_json(const Quantizer& q)
{
    const auto b = q.positive_boundaries();
    return json{{"bits", q.bits()}, {"boundaries", std::vector<double>(b.begin(), b.end())}};
}

json to_json(const ChannelModel& ch)
{
    return json{{"m", ch.m}, {"omega", ch.omega}, {"sigma2", ch.sigma2}};
}

json to_json(const DesignProblem& p)
{
    json j{{"channel", to_json(p.channel)},
           {"order", p.order},
           {"bits", p.bits},
           {"variables", to_string(p.variables)},
           {"noiseless", p.noiseless},
           {"snr_db", p.snr_db},
           {"starts", p.starts},
           {"seed", p.seed},
           {"search",
            {{"diameter_tol", p.search.diameter_tol},
             {"max_iterations", p.search.max_iterations},
             {"initial_step", p.search.initial_step},
             {"restart", p.search.restart}}}};
    if (p.constellation) {
        j["constellation"] = to_json(*p.constellation);
    }
    if (p.initial_quantizer) {
        j["initial_quantizer"] = to_json(*p.initial_quantizer);
    }
    return j;
}

json to_json(const DesignResult& r)
{
    return json{{"quantizer", to_json(r.quantizer)},
                {"constellation", to_json(r.constellation)},
                {"sep", r.sep},
                {"method", to_string(r.method)},
                {"starts_used", r.starts_used},
                {"converged", r.converged}};
}

Constellation constellation_from_json(const json& j)
{
    reject_unknown_keys(j, {"amplitudes"}, "constellation");
    return Constellation(j.at("amplitudes").get<std::vector<double>>());
}

Quantizer quantizer_from_json(const json& j)
{
    reject_unknown_keys(j, {"bits", "boundaries"}, "quantizer");
    return Quantizer(j.at("bits").get<int>(), j.at("boundaries").get<std::vector<double>>());
}

ChannelModel channel_from_json(const json& j)
{
    reject_unknown_keys(j, {"m", "omega", "sigma2"}, "channel");
    ChannelModel ch;
    ch.m = j.value("m", ch.m);
    ch.omega = j.value("omega", ch.omega);
    ch.sigma2 = j.value("sigma2", ch.sigma2);
    ch.validate();
    return ch;
}

DesignProblem design_problem_from_json(const json& j)
{
    reject_unknown_keys(j,
                        {"channel", "order", "bits", "variables", "noiseless", "snr_db", "starts", "seed", "search",
                         "constellation", "initial_quantizer"},
                        "design problem");
    DesignProblem p;
    if (j.contains("channel")) {
        p.channel = channel_from_json(j.at("channel"));
    }
    p.order = j.value("order", p.order);
    p.bits = j.value("bits", p.bits);
    if (j.contains("variables")) {
        p.variables = design_variables_from_string(j.at("variables").get<std::string>());
    }
    p.noiseless = j.value("noiseless", p.noiseless);
    p.snr_db = j.value("snr_db", p.snr_db);
    p.starts = j.value("starts", p.starts);
    p.seed = j.value("seed", p.seed);
    if (j.contains("search")) {
        const json& s = j.at("search");
        reject_unknown_keys(s, {"diameter_tol", "max_iterations", "initial_step", "restart"}, "search");
        p.search.diameter_tol = s.value("diameter_tol", p.search.diameter_tol);
        p.search.max_iterations = s.value("max_iterations", p.search.max_iterations);
        p.search.initial_step = s.value("initial_step", p.search.initial_step);
        p.search.restart = s.value("restart", p.search.restart);
    }
    if (j.contains("constellation")) {
        p.constellation = constellation_from_json(j.at("constellation"));
    }
    if (j.contains("initial_quantizer")) {
        p.initial_quantizer = quantizer_from_json(j.at("initial_quantizer"));
    }
    return p;
}

DesignResult design_result_from_json(const json& j)
{
    reject_unknown_keys(j, {"quantizer", "constellation", "sep", "method", "starts_used", "converged"},
                        "design result");
    const std::string method = j.at("method").get<std::string>();
    SepMethod m = SepMethod::closed_form;
    bool found = false;
    for (auto candidate : {SepMethod::closed_form, SepMethod::quadrature, SepMethod::monte_carlo,
                           SepMethod::noiseless, SepMethod::bound_upper, SepMethod::bound_lower, SepMethod::aqnm}) {
        if (method == to_string(candidate)) {
            m = candidate;
            found = true;
        }
    }
    if (!found) {
        throw std::invalid_argument("design result: unknown method '" + method + "'");
    }
    return DesignResult{quantizer_from_json(j.at("quantizer")), constellation_from_json(j.at("constellation")),
                        j.at("sep").get<double>(), m, j.at("starts_used").get<int>(), j.at("converged").get<bool>()};
}

}  // namespace pamq
