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

#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace pamq::detail {

Integral integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                   double rel_tol)
{
    using boost::math::quadrature::gauss_kronrod;
    constexpr unsigned max_depth = 15;

    std::vector<double> nodes{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints) {
        if (std::isfinite(x) && x > nodes.back() && x < b) {
            nodes.push_back(x);
        }
    }
    nodes.push_back(b);

    Integral total;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        double err = 0.0;
        const double v = gauss_kronrod<double, 31>::integrate(f, nodes[k], nodes[k + 1], max_depth, rel_tol, &err);
        total.value += v;
        total.abs_error += std::abs(err);
    }
    return total;
}

}  // namespace pamq::detail
