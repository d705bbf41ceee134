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

#include "pamq/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pamq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// x^m e^-x / Gamma(m), evaluated in the log domain.
double gamma_prefactor(double m, double x)
{
    return std::exp(m * std::log(x) - x - std::lgamma(m));
}

// Lower regularized gamma by the power series; converges fast for x < m + 1.
double lower_series(double m, double x)
{
    double ap = m;
    double del = 1.0 / m;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            break;
        }
    }
    return sum * gamma_prefactor(m, x);
}

// Upper regularized gamma by the Legendre continued fraction (modified Lentz).
double upper_continued_fraction(double m, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - m;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - m);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            break;
        }
    }
    return gamma_prefactor(m, x) * h;
}

void check_gamma_args(double m, double x)
{
    if (!(m > 0.0)) {
        throw std::domain_error("incomplete gamma: shape must be positive, got " + std::to_string(m));
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("incomplete gamma: argument must be nonnegative, got " + std::to_string(x));
    }
}

double double_factorial_real(int n)
{
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) {
        r *= k;
    }
    return r;
}

// log Q(x), accurate far into the upper tail where Q itself underflows.
double log_q(double x)
{
    if (x < 30.0) {
        return std::log(q_func(x));
    }
    const double inv2 = 1.0 / (x * x);
    const double series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2 * (1.0 - 7.0 * inv2)));
    return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double log_diff_exp(double big, double small)
{
    if (small == -kInf) {
        return big;
    }
    const double d = small - big;
    if (d >= 0.0) {
        return -kInf;
    }
    return big + std::log1p(-std::exp(d));
}

}  // namespace

double q_func(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double upper_gamma_reg(double m, double x)
{
    check_gamma_args(m, x);
    if (x == 0.0) {
        return 1.0;
    }
    if (x == kInf) {
        return 0.0;
    }
    if (x < m + 1.0) {
        return 1.0 - lower_series(m, x);
    }
    return upper_continued_fraction(m, x);
}

double lower_gamma_reg(double m, double x)
{
    check_gamma_args(m, x);
    if (x == 0.0) {
        return 0.0;
    }
    if (x == kInf) {
        return 1.0;
    }
    if (x < m + 1.0) {
        return lower_series(m, x);
    }
    return 1.0 - upper_continued_fraction(m, x);
}

double upper_gamma(double s, double x)
{
    return upper_gamma_reg(s, x) * std::tgamma(s);
}

std::uint64_t double_factorial(int n)
{
    if (n < -1) {
        throw std::domain_error("double_factorial: n must be >= -1, got " + std::to_string(n));
    }
    if (n > 33) {
        throw std::overflow_error("double_factorial: " + std::to_string(n) + "!! exceeds 64 bits");
    }
    std::uint64_t r = 1;
    for (int k = n; k > 1; k -= 2) {
        r *= static_cast<std::uint64_t>(k);
    }
    return r;
}

double f_integral(double a, double b, int l)
{
    if (l < 0) {
        throw std::domain_error("f_integral: moment order must be nonnegative");
    }
    if (a == b) {
        return 0.0;
    }
    const bool even = (l % 2) == 0;
    const double s = 0.5 * (l + 1);
    const double scale = std::pow(2.0, 0.5 * (l - 1));
    const double constant = even ? std::sqrt(std::numbers::pi) * double_factorial_real(l - 1) / std::numbers::sqrt2 : 0.0;

    // sgn(u)^(l+1): identically 1 for odd l (including the u = 0 limit).
    auto sign = [even](double u) { return even ? static_cast<double>((u > 0.0) - (u < 0.0)) : 1.0; };
    auto tail = [&](double u) {
        if (std::isinf(u)) {
            return 0.0;
        }
        return sign(u) * scale * upper_gamma(s, 0.5 * u * u);
    };

    // Antiderivative is -tail(u) + sign(u) * constant; the constant parts
    // cancel exactly when both endpoints share a sign.
    return -(tail(a) - tail(b)) + (sign(a) - sign(b)) * constant;
}

double gaussian_interval(double lo, double hi)
{
    if (!(lo < hi)) {
        return 0.0;
    }
    if (lo >= 0.0) {
        return q_func(lo) - q_func(hi);
    }
    if (hi <= 0.0) {
        return q_func(-hi) - q_func(-lo);
    }
    return 1.0 - q_func(hi) - q_func(-lo);
}

double log_gaussian_interval(double lo, double hi)
{
    if (!(lo < hi)) {
        return -kInf;
    }
    if (lo >= 0.0) {
        return log_diff_exp(log_q(lo), hi == kInf ? -kInf : log_q(hi));
    }
    if (hi <= 0.0) {
        return log_diff_exp(log_q(-hi), lo == -kInf ? -kInf : log_q(-lo));
    }
    // both tails may be below epsilon; keep them
    return std::log1p(-(q_func(hi) + q_func(-lo)));
}

}  // namespace pamq
