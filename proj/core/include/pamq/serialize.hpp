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

#include "pamq/optimizer.hpp"
#include "pamq/system.hpp"

#include <nlohmann/json.hpp>

namespace pamq {

nlohmann::json to_json(const Constellation& c);
nlohmann::json to_json(const Quantizer& q);
nlohmann::json to_json(const ChannelModel& ch);
nlohmann::json to_json(const DesignProblem& p);
nlohmann::json to_json(const DesignResult& r);

/// Parsers reject unknown keys and report the offending path.
Constellation constellation_from_json(const nlohmann::json& j);
Quantizer quantizer_from_json(const nlohmann::json& j);
ChannelModel channel_from_json(const nlohmann::json& j);
DesignProblem design_problem_from_json(const nlohmann::json& j);
DesignResult design_result_from_json(const nlohmann::json& j);

/// Throws std::invalid_argument naming the first key of j not in allowed.
void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* where);

}  // namespace pamq
