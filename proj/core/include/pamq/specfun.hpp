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

#include <cstdint>

/// Scalar special functions used by the SEP engines.
///
/// Everything here is pure and re-entrant. Extended-real endpoints are
/// passed as +/-infinity; terms that carry exp(-u^2/2) vanish exactly there.
namespace pamq {

/// Gaussian tail probability Q(x) = P(N(0,1) > x), via erfc.
double q_func(double x);

/// Regularized upper incomplete gamma Gamma(m, x) / Gamma(m).
/// Throws std::domain_error for m <= 0 or x < 0.
double upper_gamma_reg(double m, double x);

/// Regularized lower incomplete gamma gamma(m, x) / Gamma(m).
double lower_gamma_reg(double m, double x);

/// Unregularized upper incomplete gamma Gamma(s, x).
double upper_gamma(double s, double x);

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
/// Throws std::domain_error for n < -1 and std::overflow_error past 33!!.
std::uint64_t double_factorial(int n);

/// Moment integral F(a, b, l) = int_b^a u^l exp(-u^2/2) du, evaluated through
/// the incomplete-gamma closed forms. a and b may be infinite.
double f_integral(double a, double b, int l);

/// P(lo < N(0,1) < hi) without cancellation in either tail.
double gaussian_interval(double lo, double hi);

/// log P(lo < N(0,1) < hi); returns -infinity when the mass underflows.
double log_gaussian_interval(double lo, double hi);

}  // namespace pamq
