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

#include <functional>
#include <vector>

namespace pamq::detail {

struct Integral
{
    double value = 0.0;
    double abs_error = 0.0;
};

/// Adaptive Gauss-Kronrod over [a, b] (b may be +inf), split at the given
/// interior breakpoints so that narrow features are never straddled by the
/// first panel. Breakpoints outside (a, b) are ignored.
Integral integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                   double rel_tol = 1e-12);

}  // namespace pamq::detail
