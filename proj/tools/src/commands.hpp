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

#include "job.hpp"
#include "table.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <variant>

namespace pamq::cli {

struct CommandOutput
{
    std::variant<Table, nlohmann::json> body;
    /// Some optimization did not meet its stopping rule; the output is still written.
    bool numerical_failure = false;
    std::string warning;  ///< printed to stderr when set
};

/// Runs a validated job. Throws ConfigError / std::invalid_argument /
/// std::domain_error for bad input and pamq::NumericalError for engine failures.
CommandOutput run_command(const JobConfig& job);

std::string render(const CommandOutput& out, OutputFormat format);

}  // namespace pamq::cli
