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

#include "pamq/detector.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace {

using namespace pamq;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// P(lo < h x + N(0, sigma2/2) < hi) in long double; exact enough to rank
/// symbols without the library's tail handling.
// log P(lo < h x + n < hi), n ~ N(0, sigma2/2)
long double log_likelihood_ref(long double lo, long double hi, long double mean, long double sigma2)
{
    // Q(x / sqrt(sigma2/2)) = erfc(x / sqrt(sigma2)) / 2
    const long double s = std::sqrt(sigma2);
    const long double a = (lo - mean) / s;
    const long double b = (hi - mean) / s;
    if (a >= 0) {
        return std::log(0.5L * (boost::math::erfc(a) - boost::math::erfc(b)));
    }
    if (b <= 0) {
        return std::log(0.5L * (boost::math::erfc(-b) - boost::math::erfc(-a)));
    }
    // both tails can be far below the long double epsilon
    return std::log1p(-0.5L * boost::math::erfc(b) - 0.5L * boost::math::erfc(-a));
}

std::pair<double, double> output_interval(const Quantizer& q, int y)
{
    const int a = std::abs(y);
    const double lo = q.boundary(a - 1);
    const double hi = a == q.levels() + 1 ? kInf : q.boundary(a);
    return y > 0 ? std::pair{lo, hi} : std::pair{-hi, -lo};
}

SignedSymbol brute_force_ml(const Constellation& c, const Quantizer& q, const std::vector<double>& h,
                            const std::vector<int>& y, double sigma2)
{
    SignedSymbol best;
    long double best_log = -std::numeric_limits<long double>::infinity();
    for (int sign : {1, -1}) {
        for (std::size_t i = 0; i < c.half_size(); ++i) {
            long double ll = 0;
            for (std::size_t n = 0; n < h.size(); ++n) {
                const auto [lo, hi] = output_interval(q, y[n]);
                ll += log_likelihood_ref(lo, hi, h[n] * sign * c.amplitude(i), sigma2);
            }
            if (ll > best_log) {
                best_log = ll;
                best = {sign, i};
            }
        }
    }
    return best;
}

struct Instance
{
    Constellation c;
    Quantizer q;
};

Instance random_instance(std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> half_pick(0, 1);
    std::uniform_int_distribution<int> bits_pick(2, 3);
    const std::size_t half = half_pick(gen) ? 4 : 2;
    const int bits = bits_pick(gen);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> a(half);
    double acc = 0.0;
    for (auto& x : a) {
        acc += u(gen);
        x = acc;
    }
    const double amax = a.back();
    for (auto& x : a) {
        x *= 3.0 / amax;
    }
    std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
    acc = 0.0;
    for (auto& x : qb) {
        acc += u(gen);
        x = acc;
    }
    const double qmax = qb.back();
    for (auto& x : qb) {
        x *= 4.0 / qmax * std::uniform_real_distribution<double>(0.3, 1.0)(gen);
    }
    std::sort(qb.begin(), qb.end());
    return {Constellation(a), Quantizer(bits, qb)};
}

TEST(Quantize, Examples)
{
    const Quantizer q(2, {1.0});
    EXPECT_EQ(quantize(q, 0.5), 1);
    EXPECT_EQ(quantize(q, 2.0), 2);
    EXPECT_EQ(quantize(q, -0.5), -1);
    EXPECT_EQ(quantize(q, 0.0), 1);
    EXPECT_EQ(quantize(q, 1.0), 2);
    const Quantizer q3(3, {0.5, 1.0, 2.0});
    EXPECT_EQ(quantize(q3, 1.5), 3);
    EXPECT_EQ(quantize(q3, -7.0), -4);
}

TEST(MidpointRule, Examples)
{
    const Constellation c({1.0, 3.0});
    const Quantizer q(2, {2.0});
    EXPECT_EQ(ml_detect_midpoint(c, q, 1.0, 1), (SignedSymbol{1, 0}));
    EXPECT_EQ(ml_detect_midpoint(c, q, 1.0, 2), (SignedSymbol{1, 1}));
    EXPECT_EQ(ml_detect_midpoint(c, q, 1.0, -1), (SignedSymbol{-1, 0}));
    for (double sigma2 : {0.01, 1.0, 100.0}) {
        EXPECT_EQ(ml_detect_midpoint(c, q, 1.0, 2), brute_force_ml(c, q, {1.0}, {2}, sigma2));
        EXPECT_EQ(ml_detect_midpoint(c, q, 0.4, 2), brute_force_ml(c, q, {0.4}, {2}, sigma2));
        EXPECT_EQ(ml_detect_midpoint(c, q, 0.4, 1), brute_force_ml(c, q, {0.4}, {1}, sigma2));
    }
}

TEST(MidpointRule, AgreesWithLikelihoodArgmaxForEverySigma)
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> hdist(0.02, 2.0);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = random_instance(gen);
        const int k = inst.q.levels();
        for (int y = -(k + 1); y <= k + 1; ++y) {
            if (y == 0) {
                continue;
            }
            const double h = hdist(gen);
            const SignedSymbol mid = ml_detect_midpoint(inst.c, inst.q, h, y);
            for (double sigma : {0.1, 1.0, 10.0}) {
                ASSERT_EQ(mid, brute_force_ml(inst.c, inst.q, {h}, {y}, sigma * sigma))
                    << "trial " << trial << " y " << y << " h " << h << " sigma " << sigma;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 3000);
}

TEST(DecisionRegion, Examples)
{
    const Constellation c({1.0, 3.0});
    const Quantizer q(2, {2.0});
    const DecisionRegion r = decision_region(c, q, 1, 1);
    EXPECT_DOUBLE_EQ(r.lower, 0.0);
    EXPECT_DOUBLE_EQ(r.upper, 0.25);
    EXPECT_TRUE(decision_region(c, q, 2, 0).empty());
    EXPECT_FALSE(decision_region(c, q, 2, 1).empty());
}

TEST(DecisionRegion, EquivalentToMidpointRule)
{
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> hdist(0.01, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = random_instance(gen);
        for (int y = 1; y <= inst.q.levels() + 1; ++y) {
            for (int draw = 0; draw < 10; ++draw) {
                const double h = hdist(gen);
                const SignedSymbol s = ml_detect_midpoint(inst.c, inst.q, h, y);
                EXPECT_EQ(s.sign, 1);
                for (std::size_t i = 0; i < inst.c.half_size(); ++i) {
                    const bool inside = decision_region(inst.c, inst.q, y, i).contains(h * h);
                    EXPECT_EQ(inside, s.index == i) << "y " << y << " i " << i << " h " << h;
                }
            }
        }
    }
}

TEST(DecisionRegion, TilesPositiveAxis)
{
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_instance(gen);
        for (int y = 1; y <= inst.q.levels(); ++y) {
            // largest symbol owns the smallest fading states
            double edge = 0.0;
            for (std::size_t k = inst.c.half_size(); k-- > 0;) {
                const DecisionRegion r = decision_region(inst.c, inst.q, y, k);
                ASSERT_FALSE(r.empty());
                EXPECT_NEAR(r.lower, edge, 1e-15 * std::max(1.0, edge));
                edge = r.upper;
            }
            EXPECT_TRUE(std::isinf(edge));
        }
    }
}

TEST(NoiselessRegion, SubsetOfDecisionRegionAndExplicitBounds)
{
    std::mt19937_64 gen(24);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_instance(gen);
        const Constellation& c = inst.c;
        const Quantizer& q = inst.q;
        for (int y = 1; y <= q.levels() + 1; ++y) {
            for (std::size_t i = 0; i < c.half_size(); ++i) {
                const DecisionRegion d = decision_region(c, q, y, i);
                const DecisionRegion n = noiseless_region(c, q, y, i);
                if (n.empty()) {
                    continue;
                }
                EXPECT_GE(n.lower, d.lower);
                EXPECT_LE(n.upper, d.upper);
                // the noiseless output of rho_i lies in region y
                EXPECT_GE(n.lower, std::pow(q.boundary(y - 1) / c.amplitude(i), 2) * (1 - 1e-15));
                if (y <= q.levels()) {
                    EXPECT_LE(n.upper, std::pow(q.boundary(y) / c.amplitude(i), 2) * (1 + 1e-15));
                }
                if (y <= q.levels() && i >= 1 && i + 1 < c.half_size()) {
                    const double mid2 = q.boundary(y - 1) + q.boundary(y);
                    const double lo = std::max(mid2 / (c.amplitude(i) + c.amplitude(i + 1)), q.boundary(y - 1) / c.amplitude(i));
                    const double hi = std::min(mid2 / (c.amplitude(i) + c.amplitude(i - 1)), q.boundary(y) / c.amplitude(i));
                    EXPECT_NEAR(n.lower, lo * lo, 1e-13 * lo * lo);
                    EXPECT_NEAR(n.upper, hi * hi, 1e-13 * hi * hi);
                }
            }
        }
    }
}

TEST(NoiselessRegion, OptimalTwoBitExampleIsNonEmpty)
{
    const Constellation c({1.0, 3.0});
    const Quantizer q(2, {1.5722});
    const DecisionRegion n = noiseless_region(c, q, 1, 0);
    EXPECT_FALSE(n.empty());
    // z in the region: noiseless output of +1 lands in y = 1 and the rule picks +1
    const double z = 0.5 * (n.lower + std::min(n.upper, n.lower + 10.0));
    const double h = std::sqrt(z);
    EXPECT_EQ(quantize(q, h * 1.0), 1);
    EXPECT_EQ(ml_detect_midpoint(c, q, h, 1), (SignedSymbol{1, 0}));
}

TEST(Simo, SingleAntennaReducesToMidpointRule)
{
    std::mt19937_64 gen(25);
    std::uniform_real_distribution<double> hdist(0.05, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_instance(gen);
        const int k = inst.q.levels();
        for (int y = -(k + 1); y <= k + 1; ++y) {
            if (y == 0) {
                continue;
            }
            const double h = hdist(gen);
            const double hs[] = {h};
            const int ys[] = {y};
            EXPECT_EQ(ml_detect_simo(inst.c, inst.q, hs, ys, 0.5), ml_detect_midpoint(inst.c, inst.q, h, y));
            // identical antennas behave like one
            const double h3[] = {h, h, h};
            const int y3[] = {y, y, y};
            EXPECT_EQ(ml_detect_simo(inst.c, inst.q, h3, y3, 0.5), ml_detect_midpoint(inst.c, inst.q, h, y));
        }
    }
}

TEST(Simo, MatchesExhaustiveArgmax)
{
    std::mt19937_64 gen(26);
    std::uniform_real_distribution<double> hdist(0.05, 2.0);
    std::uniform_int_distribution<int> ypick(0, 3);
    const Constellation c({1.0, 3.0});
    const int ys_all[] = {-2, -1, 1, 2};
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Quantizer q(2, {std::uniform_real_distribution<double>(0.3, 3.0)(gen)});
        const std::vector<double> h = {hdist(gen), hdist(gen)};
        const std::vector<int> y = {ys_all[ypick(gen)], ys_all[ypick(gen)]};
        for (double sigma2 : {0.05, 0.5, 5.0}) {
            const SignedSymbol got = ml_detect_simo(c, q, h, y, sigma2);
            const SignedSymbol want = brute_force_ml(c, q, h, y, sigma2);
            ASSERT_EQ(got, want) << h[0] << "," << h[1] << " y " << y[0] << "," << y[1] << " s2 " << sigma2;
            ++checked;
            // antenna order is irrelevant
            const std::vector<double> hr = {h[1], h[0]};
            const std::vector<int> yr = {y[1], y[0]};
            EXPECT_EQ(ml_detect_simo(c, q, hr, yr, sigma2), got);
        }
    }
    EXPECT_EQ(checked, 6000);
}

TEST(LogLikelihood, FlooredAndConsistent)
{
    const Quantizer q(2, {1.0});
    EXPECT_NEAR(log_likelihood(q, 1.0, 0.5, 1, 0.5),
                static_cast<double>(log_likelihood_ref(0.0L, 1.0L, 0.5L, 0.5L)), 1e-12);
    EXPECT_GE(log_likelihood(q, 100.0, 3.0, -1, 1e-6), kLogLikelihoodFloor);
}

}  // namespace
