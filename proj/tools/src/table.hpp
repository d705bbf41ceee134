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
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pamq::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// %.12e-style scientific notation, independent of the C locale.
std::string format_double(double v);

/// Header line plus one line per row; doubles in format_double.
void write_csv(const Table& t, std::ostream& os);

/// Array of objects keyed by column name.
nlohmann::json table_to_json(const Table& t);

/// Values joined with ';' for list-valued CSV cells.
std::string join(const std::vector<double>& v);

}  // namespace pamq::cli
