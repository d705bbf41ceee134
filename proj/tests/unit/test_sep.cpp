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

#include "pamq/rng.hpp"
#include "pamq/sep.hpp"
#include "pamq/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace {

using namespace pamq;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reference values from tests/oracles/sep_reference.py: 40-digit mpmath
// quadrature of the model itself (Gaussian likelihoods, midpoint detection,
// Gamma density), independent of the series used here.
struct HCase
{
    double m, omega, b, c, z_lo, z_hi, value;
};
constexpr HCase kHCases[] = {
    {1, 1, 1, 0, 0, kInf, 0.2113248654051871177454256},
    {2, 1, 3, 1.5, 0.2, 4, 0.4096197252478729569717157},
    {3, 0.5, 20, 2, 0, 1, 0.2221032991545813827415579},
    {4, 2, 0.5, 0.5, 1, kInf, 0.2587561875979556023461075},
    {1, 1, 100, 5, 0.1, 0.5, 0.129993411099492604914763},
};
constexpr HCase kHQuadCase = {2.5, 1, 4, 1, 0, kInf, 0.2219253373837851285257948};

struct SepCase
{
    std::vector<double> amplitudes;
    std::vector<double> boundaries;
    int bits;
    double m, omega, snr_db, sep, noiseless;
};

const std::vector<SepCase>& sep_cases()
{
    static const std::vector<SepCase> cases = {
        {{1, 3}, {1.5}, 2, 1, 1, 10, 0.244173496926908337568278, 0.1632992207452297342690237},
        {{1, 3}, {1.5}, 2, 2, 1, 20, 0.08488402437132537852887627, 0.07565174569569127516154397},
        {{1, 3}, {0.5, 1.2, 2.4}, 3, 3, 0.7, 15, 0.04389155323223297261846725, 0.0001286267742898573476850682},
        {{1, 3, 5, 7}, {2, 4, 6}, 3, 1, 1, 25, 0.2862793473659764859467393, 0.2831395977720827217753045},
        {{1, 3, 5, 7}, {0.5, 1, 1.5, 2, 2.5, 3, 3.5}, 4, 4, 1, 30, 0.2685827223844177485502074, -1},
        {{1, 3}, {1.5}, 2, 2.5, 1, 12, 0.1223671071707656789400257, -1},
    };
    return cases;
}

TEST(HFunction, TrivialCases)
{
    EXPECT_EQ(h_function(2, 1.0, 3.0, 1.0, 0.7, 0.7), 0.0);
    for (double c : {0.0, 0.5, 2.0, 6.0}) {
        EXPECT_NEAR(h_function(3, 1.3, 0.0, c, 0.0, kInf), q_func(-c), 1e-15);
    }
    EXPECT_NEAR(h_function(1, 1, 1, 0, 0, kInf), 0.5 * (1.0 - std::sqrt(1.0 / 3.0)), 1e-15);
    // c = +inf: the integrand is the density
    EXPECT_NEAR(h_function(2, 1.0, 5.0, kInf, 0.5, 2.0), boost::math::gamma_p(2.0, 4.0) - boost::math::gamma_p(2.0, 1.0),
                1e-15);
}

TEST(HFunction, MatchesHighPrecisionReference)
{
    for (const auto& h : kHCases) {
        EXPECT_NEAR(h_function(static_cast<int>(h.m), h.omega, h.b, h.c, h.z_lo, h.z_hi), h.value, 2e-15)
            << h.m << " " << h.b << " " << h.c;
        const QuadratureValue q = h_function_quad(h.m, h.omega, h.b, h.c, h.z_lo, h.z_hi);
        EXPECT_TRUE(q.converged);
        EXPECT_NEAR(q.value, h.value, 1e-12);
    }
    const QuadratureValue q = h_function_quad(kHQuadCase.m, kHQuadCase.omega, kHQuadCase.b, kHQuadCase.c,
                                              kHQuadCase.z_lo, kHQuadCase.z_hi);
    EXPECT_NEAR(q.value, kHQuadCase.value, 1e-12);
}

TEST(HFunction, SeriesAgreesWithQuadratureOnRandomDraws)
{
    std::mt19937_64 gen(31);
    std::uniform_int_distribution<int> mdist(1, 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const int m = mdist(gen);
        const double omega = 0.2 + 3.0 * u(gen);
        const double b = std::pow(10.0, -1.0 + 5.0 * u(gen));
        const double c = 4.0 * u(gen);
        const double z_lo = u(gen) < 0.3 ? 0.0 : 3.0 * u(gen);
        const double z_hi = u(gen) < 0.3 ? kInf : z_lo + 3.0 * u(gen);
        const double series = h_function(m, omega, b, c, z_lo, z_hi);
        const QuadratureValue quad = h_function_quad(m, omega, b, c, z_lo, z_hi);
        EXPECT_NEAR(series, quad.value, 1e-9) << m << " " << omega << " " << b << " " << c << " " << z_lo << " " << z_hi;
    }
}

TEST(HFunction, IncreasingInC)
{
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double m = 0.5 + 3.5 * u(gen);
        const double b = 0.1 + 20.0 * u(gen);
        const double c = 3.0 * u(gen);
        const double lo = h_function_quad(m, 1.0, b, c, 0.0, 2.0).value;
        const double hi = h_function_quad(m, 1.0, b, c + 0.25, 0.0, 2.0).value;
        EXPECT_GT(hi, lo);
    }
}

TEST(HFunction, NonIntegerShapeAgainstMonteCarlo)
{
    const double m = 0.5, omega = 1.0, b = 4.0, c = 1.0, z_lo = 0.1, z_hi = 3.0;
    RandomStream s(99, 0, 0);
    const int n = 10'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = s.gamma(m) * omega / m;
        const double v = (z > z_lo && z < z_hi) ? q_func(-c + std::sqrt(b * z)) : 0.0;
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(h_function_quad(m, omega, b, c, z_lo, z_hi).value, mean, 3.0 * se);
}

TEST(HFunction, RejectsBadArguments)
{
    EXPECT_THROW(h_function(0, 1.0, 1.0, 0.0, 0.0, 1.0), std::domain_error);
    EXPECT_THROW(h_function(1, 1.0, -1.0, 0.0, 0.0, 1.0), std::domain_error);
}

TEST(Sep, EnginesMatchHighPrecisionReference)
{
    for (const auto& s : sep_cases()) {
        const Constellation c(s.amplitudes);
        const Quantizer q(s.bits, s.boundaries);
        const ChannelModel ch{s.m, s.omega, 0.0};
        const double snr = db_to_linear(s.snr_db);
        if (ch.integer_shape()) {
            const SepResult cf = sep_closed_form(c, q, ch, snr);
            EXPECT_EQ(cf.method, SepMethod::closed_form);
            EXPECT_NEAR(cf.value, s.sep, 1e-13 * s.sep) << s.m << " " << s.snr_db;
        }
        const SepResult qd = sep_quadrature(c, q, ch, snr);
        EXPECT_EQ(qd.method, SepMethod::quadrature);
        EXPECT_TRUE(qd.converged);
        EXPECT_NEAR(qd.value, s.sep, 1e-11 * s.sep) << s.m << " " << s.snr_db;
        if (s.noiseless >= 0.0) {
            EXPECT_NEAR(sep_noiseless(c, q, ch).value, s.noiseless, 1e-13 * s.noiseless + 1e-16);
        }
    }
    // non-integer shape in the noiseless engine
    EXPECT_NEAR(sep_noiseless(Constellation({1, 3}), Quantizer(2, {1.5}), ChannelModel{0.75, 1.3, 0.0}).value,
                0.2123518482629670203697475, 1e-14);
}

TEST(Sep, ClosedFormNeedsIntegerShape)
{
    EXPECT_THROW(sep_closed_form(Constellation({1, 3}), Quantizer(2, {1.5}), ChannelModel{1.5, 1, 0}, 10.0),
                 std::invalid_argument);
}

TEST(Sep, LowSnrApproachesRandomGuessing)
{
    const double snr = 1e-9;
    const double p4 = sep_closed_form(Constellation({1, 3}), Quantizer(2, {1.5}), ChannelModel{1, 1, 0}, snr).value;
    EXPECT_NEAR(p4, 0.75, 1e-4);
    const double p8 = sep_closed_form(Constellation::equidistant(8), Quantizer(3, {2, 4, 6}), ChannelModel{2, 1, 0}, snr).value;
    EXPECT_NEAR(p8, 0.875, 1e-4);
}

TEST(Sep, QuantizerSweepEnginesAgree)
{
    const Constellation c({1, 3});
    const ChannelModel ch{1, 1, 0};
    for (double q1 = 0.1; q1 < 5.0; q1 += 0.1) {
        const Quantizer q(2, {q1});
        const double snr = db_to_linear(10.0);
        EXPECT_NEAR(sep_closed_form(c, q, ch, snr).value, sep_quadrature(c, q, ch, snr).value, 1e-9) << q1;
    }
}

TEST(Sep, ValuesAreProbabilities)
{
    std::mt19937_64 gen(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 60; ++k) {
        const bool eight = u(gen) < 0.5;
        const Constellation c = Constellation::equidistant(eight ? 8 : 4).scaled(0.1 + u(gen));
        const int bits = 2 + static_cast<int>(3 * u(gen));
        std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
        double acc = 0.0;
        for (auto& x : qb) {
            acc += 0.05 + u(gen);
            x = acc;
        }
        const Quantizer q(bits, qb);
        const ChannelModel ch{static_cast<double>(1 + static_cast<int>(4 * u(gen))), 0.5 + u(gen), 0};
        const double snr = db_to_linear(-10.0 + 80.0 * u(gen));
        const double v = sep_closed_form(c, q, ch, snr).value;
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        const double nl = sep_noiseless(c, q, ch).value;
        EXPECT_GE(nl, 0.0);
        EXPECT_LE(nl, 1.0);
    }
}

TEST(Sep, HighSnrConvergesToNoiseless)
{
    const Constellation c({1, 3});
    for (double m : {1.0, 2.0, 4.0}) {
        const ChannelModel ch{m, 1, 0};
        for (const Quantizer& q : {Quantizer(2, {1.5722}), Quantizer(3, {0.5, 1.4, 4.0})}) {
            const double hi = sep_closed_form(c, q, ch, db_to_linear(120.0)).value;
            EXPECT_NEAR(hi, sep_noiseless(c, q, ch).value, 1e-3);
        }
    }
}

TEST(Noiseless, TwoBitOptimumHasClosedForm)
{
    // M = 4, b = 2, m = 1: P(q) = (1 - e^(-q^2/9) + e^(-q^2)) / 2, minimized at q^2 = (9/8) ln 9
    const double q1 = std::sqrt(9.0 / 8.0 * std::log(9.0));
    const double expected = 0.5 * (1.0 - std::exp(-q1 * q1 / 9.0) + std::exp(-q1 * q1));
    const SepResult r = sep_noiseless(Constellation({1, 3}), Quantizer(2, {q1}), ChannelModel{1, 1, 0});
    EXPECT_EQ(r.method, SepMethod::noiseless);
    EXPECT_NEAR(r.value, expected, 1e-15);
    EXPECT_NEAR(r.value, 0.1622952508, 1e-10);
    for (double q : {0.5, 1.0, 2.0, 3.0}) {
        EXPECT_NEAR(sep_noiseless(Constellation({1, 3}), Quantizer(2, {q}), ChannelModel{1, 1, 0}).value,
                    0.5 * (1.0 - std::exp(-q * q / 9.0) + std::exp(-q * q)), 1e-15);
    }
}

TEST(Noiseless, TinyBoundarySaturatesAllButTopSymbol)
{
    // q_1 -> 0: every output saturates, so only the outer symbols are detected
    const double v = sep_noiseless(Constellation({1, 3}), Quantizer(2, {1e-6}), ChannelModel{1, 1, 0}).value;
    EXPECT_NEAR(v, 0.5, 1e-9);
}

TEST(GammaMass, AgreesWithBoostAndKeepsTails)
{
    for (double m : {0.5, 1.0, 3.0, 7.5}) {
        EXPECT_NEAR(gamma_mass(m, 1.0, 0.0, kInf), 1.0, 1e-15);
        const double ref = boost::math::gamma_p(m, m * 2.0 / 1.5) - boost::math::gamma_p(m, m * 0.5 / 1.5);
        EXPECT_NEAR(gamma_mass(m, 1.5, 0.5, 2.0), ref, 1e-15);
    }
    EXPECT_NEAR(gamma_mass(1.0, 1.0, 50.0, kInf), std::exp(-50.0), 1e-14 * std::exp(-50.0));
    EXPECT_NEAR(gamma_mass(1.0, 1.0, 0.0, 1e-12), 1e-12, 1e-24);
    EXPECT_EQ(gamma_mass(2.0, 1.0, 3.0, 3.0), 0.0);
}

TEST(FloorBounds, EqualAtFourPamWithRatioQuantizer)
{
    const Constellation c({1, 3});
    for (double m : {1.0, 2.0, 3.5}) {
        const ChannelModel ch{m, 1, 0};
        for (double q1 : {0.3, 1.0, 1.5722, 2.5}) {
            for (int bits : {2, 3, 4}) {
                std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
                for (std::size_t y = 0; y < qb.size(); ++y) {
                    qb[y] = q1 * std::pow(3.0, static_cast<double>(y));
                }
                const Quantizer q(bits, qb);
                const FloorBounds fb = floor_bounds(c, q, ch);
                const double exact = sep_noiseless(c, q, ch).value;
                EXPECT_NEAR(fb.lower, exact, 1e-12) << m << " " << q1 << " " << bits;
                EXPECT_NEAR(fb.upper, exact, 1e-12) << m << " " << q1 << " " << bits;
            }
        }
    }
}

TEST(FloorBounds, SandwichEightPam)
{
    std::mt19937_64 gen(34);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        const double rho = 0.15 + 0.5 * u(gen);
        const Constellation c = GeometricConstellation(rho, 8).materialize();
        const int bits = 3 + static_cast<int>(2 * u(gen));
        const double q1 = c.amplitude(0) * (0.5 + 2.0 * u(gen));
        std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
        for (std::size_t y = 0; y < qb.size(); ++y) {
            qb[y] = q1 / std::pow(rho, static_cast<double>(y));
        }
        const Quantizer q(bits, qb);
        const ChannelModel ch{1.0 + 3.0 * u(gen), 1.0, 0.0};
        const FloorBounds fb = floor_bounds(c, q, ch);
        const double exact = sep_noiseless(c, q, ch).value;
        EXPECT_LE(fb.lower, exact * (1 + 1e-12) + 1e-300);
        EXPECT_GE(fb.upper, exact * (1 - 1e-12));
        ++checked;
    }
    EXPECT_EQ(checked, 200);
}

TEST(FloorBounds, VanishWithResolution)
{
    const Constellation c({1, 3});
    const ChannelModel ch{1, 1, 0};
    double prev = 1.0;
    for (int bits = 2; bits <= 6; ++bits) {
        // q_1 shrinks and q_K grows as bits increase
        const double q1 = std::pow(0.5, bits);
        std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
        for (std::size_t y = 0; y < qb.size(); ++y) {
            qb[y] = q1 * std::pow(3.0, static_cast<double>(y));
        }
        const FloorBounds fb = floor_bounds(c, Quantizer(bits, qb), ch);
        EXPECT_LT(fb.upper, prev);
        prev = fb.upper;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(FloorGeometric, ScheduleVanishesAndResolutionHelps)
{
    const ChannelModel ch{1, 1, 0};
    double prev = 1.0;
    for (double rho : {0.5, 0.3, 0.1, 0.05, 0.01}) {
        const GeometricConstellation g(rho, 4);
        const double q1 = g.normalizer() * std::pow(rho, 2.0);  // sqrt(C^2 rho^4)
        const double v = floor_geometric(g, q1, ch, 3, FloorKind::ratio);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-3);

    const GeometricConstellation g(0.3, 4);
    prev = 1.0;
    for (int bits = 2; bits <= 6; ++bits) {
        const double v = floor_geometric(g, 0.05, ch, bits, FloorKind::ratio);
        EXPECT_LE(v, prev);
        prev = v;
    }
    EXPECT_THROW(floor_geometric(GeometricConstellation(0.3, 8), 0.1, ch, 2, FloorKind::uniform), RegimeError);
}

TEST(FloorGeometric, UpperBoundsNoiselessSep)
{
    // the bound is an upper bound on the exact floor of the same design
    const ChannelModel ch{2, 1, 0};
    for (double rho : {0.5, 0.2}) {
        const GeometricConstellation g(rho, 4);
        const Constellation c = g.materialize();
        const double q1 = 0.8 * c.amplitude(0);
        const Quantizer q(3, {q1, q1 / rho, q1 / (rho * rho)});
        EXPECT_GE(floor_geometric(g, q1, ch, 3, FloorKind::ratio) * (1 + 1e-12), sep_noiseless(c, q, ch).value);
    }
}

TEST(Aqnm, LimitsAndPlateau)
{
    const Constellation c = Constellation({1, 3}).scaled(1.0 / std::sqrt(5.0));  // E_s = 1
    EXPECT_EQ(sep_aqnm(c, kInf, 1.0).value, 0.0);
    EXPECT_LT(sep_aqnm(c, 1e12, 1.0).value, 1e-5);
    const double alpha = 0.9;
    // SINR -> alpha / (1 - alpha) with E_s = 1
    const double sinr = alpha / (1.0 - alpha);
    const double plateau = 0.75 * (1.0 - std::sqrt(sinr / (1.0 + sinr)));
    EXPECT_NEAR(sep_aqnm(c, kInf, alpha).value, plateau, 1e-15);
    EXPECT_GT(plateau, 0.0);
    // finite SNR: SINR = alpha / (1/snr + 1 - alpha)
    const double snr = 100.0;
    const double s2 = alpha / (1.0 / snr + 1.0 - alpha);
    EXPECT_NEAR(sep_aqnm(c, snr, alpha).value, 0.75 * (1.0 - std::sqrt(s2 / (1.0 + s2))), 1e-15);
    EXPECT_EQ(sep_aqnm(c, snr, alpha).method, SepMethod::aqnm);
    EXPECT_THROW(sep_aqnm(c, snr, 0.0), std::invalid_argument);
}

}  // namespace
