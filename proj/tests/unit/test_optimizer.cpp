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

#include "pamq/optimizer.hpp"
#include "pamq/sep.hpp"

#include <boost/math/tools/minima.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

namespace {

using namespace pamq;

DesignProblem two_bit_problem(double m, double omega, bool noiseless, double snr_db)
{
    DesignProblem p;
    p.channel = {m, omega, 0.0};
    p.order = 4;
    p.bits = 2;
    p.noiseless = noiseless;
    p.snr_db = snr_db;
    p.constellation = Constellation({1.0, 3.0});
    return p;
}

// One-dimensional oracle: Brent's method on the SEP curve of q_1.
std::pair<double, double> brent_two_bit(const DesignProblem& p, double lo, double hi)
{
    const Constellation c = *p.constellation;
    const auto f = [&](double q1) { return evaluate_design(p, c, Quantizer(2, {q1})).value; };
    return boost::math::tools::brent_find_minima(f, lo, hi, 40);
}

TEST(Optimizer, NoiselessTwoBitMatchesAnalyticOptimum)
{
    const DesignResult r = optimize(two_bit_problem(1, 1, true, 0));
    const double q1 = std::sqrt(9.0 / 8.0 * std::log(9.0));
    EXPECT_EQ(r.method, SepMethod::noiseless);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.quantizer.positive_boundaries()[0], q1, 1e-6);
    EXPECT_NEAR(r.sep, 0.5 * (1.0 - std::exp(-q1 * q1 / 9.0) + std::exp(-q1 * q1)), 1e-13);
}

TEST(Optimizer, TwoBitAgreesWithBrentAtFiniteSnr)
{
    for (double m : {1.0, 2.0, 3.0}) {
        for (double snr_db : {5.0, 15.0, 30.0}) {
            const DesignProblem p = two_bit_problem(m, 1, false, snr_db);
            const auto [q_ref, sep_ref] = brent_two_bit(p, 0.05, 6.0);
            const DesignResult r = optimize(p);
            EXPECT_LE(r.sep, sep_ref * (1 + 1e-10)) << m << " " << snr_db;
            EXPECT_NEAR(r.quantizer.positive_boundaries()[0], q_ref, 1e-4 * q_ref) << m << " " << snr_db;
        }
    }
}

TEST(Optimizer, NearlyStaticChannelPutsBoundaryAtMidpoint)
{
    // m -> inf removes fading; at moderate SNR the best 2-bit threshold for
    // {1, 3} sits between the two amplitudes, close to 2.
    const DesignResult r = optimize(two_bit_problem(20, 1, false, 12));
    EXPECT_NEAR(r.quantizer.positive_boundaries()[0], 2.0, 0.1);
}

TEST(Optimizer, ShapeIsScaleCovariantInOmega)
{
    const DesignResult base = optimize(two_bit_problem(2, 1, true, 0));
    for (double omega : {0.25, 4.0}) {
        const DesignResult r = optimize(two_bit_problem(2, omega, true, 0));
        EXPECT_NEAR(r.sep, base.sep, 1e-9);
        EXPECT_NEAR(r.quantizer.positive_boundaries()[0],
                    base.quantizer.positive_boundaries()[0] * std::sqrt(omega), 1e-5);
    }
}

TEST(Optimizer, ResultIsLocallyOptimal)
{
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 4;
    p.bits = 3;
    p.snr_db = 25;
    p.constellation = Constellation({1.0, 3.0});
    const DesignResult r = optimize(p);
    const auto qb = r.quantizer.positive_boundaries();
    for (std::size_t k = 0; k < qb.size(); ++k) {
        for (double step : {-1e-3, 1e-3}) {
            std::vector<double> moved(qb.begin(), qb.end());
            moved[k] *= 1.0 + step;
            if ((k > 0 && moved[k] <= moved[k - 1]) || (k + 1 < moved.size() && moved[k] >= moved[k + 1])) {
                continue;
            }
            EXPECT_GE(evaluate_design(p, r.constellation, Quantizer(3, moved)).value, r.sep * (1 - 1e-12));
        }
    }
}

TEST(Optimizer, MoreStartsNeverHurt)
{
    DesignProblem p;
    p.channel = {2, 1, 0};
    p.order = 8;
    p.bits = 3;
    p.snr_db = 30;
    p.constellation = Constellation::equidistant(8);
    double prev = 2.0;
    for (int starts : {1, 4, 16, 32}) {
        p.starts = starts;
        const DesignResult r = optimize(p);
        EXPECT_EQ(r.starts_used, starts);
        EXPECT_LE(r.sep, prev);
        prev = r.sep;
    }
}

TEST(Optimizer, ThreadCountDoesNotChangeTheResult)
{
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 4;
    p.bits = 3;
    p.variables = DesignVariables::joint_nonuniform;
    p.snr_db = 20;
    p.threads = 1;
    const DesignResult a = optimize(p);
    p.threads = 4;
    const DesignResult b = optimize(p);
    EXPECT_EQ(a.sep, b.sep);
    EXPECT_EQ(a.quantizer, b.quantizer);
    EXPECT_EQ(a.constellation, b.constellation);
}

TEST(Optimizer, JointDesignsKeepUnitEnergy)
{
    for (DesignVariables v : {DesignVariables::joint_nonuniform, DesignVariables::joint_uniform}) {
        DesignProblem p;
        p.channel = {1, 1, 0};
        p.order = 4;
        p.bits = 3;
        p.variables = v;
        p.noiseless = true;
        EXPECT_EQ(p.dimension(), v == DesignVariables::joint_nonuniform ? 4 : 2);
        const DesignResult r = optimize(p);
        double energy = 0.0;
        for (double a : r.constellation.amplitudes()) {
            energy += a * a;
        }
        EXPECT_NEAR(energy, 1.0, 1e-12);
        // the jointly optimized design beats the normalized equidistant one
        DesignProblem fixed = p;
        fixed.variables = v == DesignVariables::joint_nonuniform ? DesignVariables::quantizer_only
                                                                 : DesignVariables::uniform_step_only;
        fixed.constellation = Constellation::equidistant(4).normalized();
        EXPECT_LE(r.sep, optimize(fixed).sep * (1 + 1e-9));
    }
}

TEST(Optimizer, EncodeDecodeRoundTrip)
{
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 8;
    p.bits = 4;
    p.variables = DesignVariables::joint_nonuniform;
    const Constellation c = Constellation({0.1, 0.3, 0.5, 0.7}).normalized();
    std::vector<double> qb;
    for (int y = 1; y <= 7; ++y) {
        qb.push_back(0.12 * y * y);
    }
    const Quantizer q(4, qb);
    const auto theta = encode_design(p, c, q);
    EXPECT_EQ(static_cast<int>(theta.size()), p.dimension());
    const auto [c2, q2] = decode_design(p, theta);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(c2.amplitude(i), c.amplitude(i), 1e-12);
    }
    for (int y = 1; y <= 7; ++y) {
        EXPECT_NEAR(q2.boundary(y), q.boundary(y), 1e-12);
    }
}

TEST(GeometricRatio, OptimizedBoundariesFollowTheConstellationRatio)
{
    const double rho = 0.4;
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 4;
    p.bits = 3;
    p.noiseless = true;
    p.constellation = GeometricConstellation(rho, 4).materialize();
    p.starts = 32;
    const DesignResult r = optimize(p);
    const RatioDiagnostics d = check_geometric_ratio(r.quantizer, rho);
    ASSERT_EQ(d.ratios.size(), 2u);
    EXPECT_TRUE(d.within(0.01)) << d.max_deviation;

    // negative control: break the ratio and the floor goes up
    std::vector<double> broken(r.quantizer.positive_boundaries().begin(), r.quantizer.positive_boundaries().end());
    broken[2] *= 1.3;
    const Quantizer qb(3, broken);
    EXPECT_FALSE(check_geometric_ratio(qb, rho).within(0.01));
    EXPECT_GT(evaluate_design(p, r.constellation, qb).value, r.sep);
}

TEST(GeometricRatio, TwoBitsHaveNoRatioToCheck)
{
    const RatioDiagnostics d = check_geometric_ratio(Quantizer(2, {0.7}), 0.4);
    EXPECT_TRUE(d.ratios.empty());
    EXPECT_EQ(d.max_deviation, 0.0);
    EXPECT_TRUE(d.within(0.0));
    const RatioDiagnostics e = check_geometric_ratio(Quantizer(3, {0.2, 0.5, 1.25}), 0.4);
    EXPECT_NEAR(e.max_deviation, 0.0, 1e-12);
}

TEST(Shaping, ClosedFormMinimizer)
{
    EXPECT_NEAR(optimal_shaping_ratio(1, 1, 1, 1), 1.0, 1e-15);
    // agrees with a direct 1-D search
    for (const auto& [a, b, c] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 2.0, 1.0}, {3.0, 1.0, 0.5}, {1.0, 4.0, 2.0}}) {
        for (double sigma : {1e-3, 0.1, 1.0}) {
            const auto f = [&](double r) { return shaping_tradeoff(a, b, c, sigma, r); };
            const double rho = optimal_shaping_ratio(a, b, c, sigma);
            const auto [r_ref, v_ref] = boost::math::tools::brent_find_minima(f, rho * 1e-3, rho * 1e3, 50);
            EXPECT_NEAR(rho, r_ref, 1e-4 * r_ref) << a << b << c << sigma;
            EXPECT_LE(f(rho), v_ref * (1 + 1e-12));
        }
    }
    EXPECT_THROW(optimal_shaping_ratio(1, 0.5, 4, 1), RegimeError);
}

TEST(Shaping, RatioShrinksSlowerThanNoise)
{
    // log rho* / log sigma^2 = C / (A + BC): for A = 2, B = 2, C = 1 it is 1/4,
    // so rho*^2 / sigma^2 grows as sigma -> 0 with log-log slope -1/2.
    double prev = 0.0;
    std::vector<double> x, y;
    for (double sigma : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const double rho = optimal_shaping_ratio(2, 2, 1, sigma);
        const double g = rho * rho / (sigma * sigma);
        EXPECT_GT(g, prev);
        prev = g;
        x.push_back(std::log(sigma * sigma));
        y.push_back(std::log(g));
    }
    const double slope = (y.back() - y.front()) / (x.back() - x.front());
    EXPECT_NEAR(slope, -0.5, 0.02);
}

TEST(NelderMead, Rosenbrock)
{
    const auto f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, {.diameter_tol = 1e-10, .max_iterations = 5000});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-5);
    EXPECT_NEAR(r.x[1], 1.0, 1e-5);
    EXPECT_LT(r.value, 1e-12);
}

TEST(Optimizer, RejectsBadProblems)
{
    DesignProblem p = two_bit_problem(1, 1, false, 10);
    p.starts = 0;
    EXPECT_THROW(optimize(p), std::invalid_argument);
    p = two_bit_problem(1, 1, false, 10);
    p.constellation.reset();
    EXPECT_THROW(optimize(p), std::invalid_argument);
    DesignProblem g;
    g.order = 8;
    g.bits = 2;
    g.variables = DesignVariables::geometric_ratio;
    g.noiseless = true;
    EXPECT_THROW(optimize(g), RegimeError);
}

}  // namespace
