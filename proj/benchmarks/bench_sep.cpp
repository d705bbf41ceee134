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

#include "pamq/montecarlo.hpp"
#include "pamq/sep.hpp"

#include <benchmark/benchmark.h>

#include <limits>

namespace {

using namespace pamq;

void BM_HFunctionSeries(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_function(m, 1.0, 40.0, 1.5, 0.1, 2.0));
    }
}
BENCHMARK(BM_HFunctionSeries)->Arg(1)->Arg(4)->Arg(16);

void BM_HFunctionQuadrature(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_function_quad(2.5, 1.0, 40.0, 1.5, 0.1, 2.0));
    }
}
BENCHMARK(BM_HFunctionQuadrature);

Quantizer spread_quantizer(int bits, double top)
{
    std::vector<double> qb(static_cast<std::size_t>(boundary_count(bits)));
    for (std::size_t y = 0; y < qb.size(); ++y) {
        qb[y] = top * static_cast<double>(y + 1) / static_cast<double>(qb.size() + 1);
    }
    return Quantizer(bits, qb);
}

void BM_SepClosedForm(benchmark::State& state)
{
    const int order = static_cast<int>(state.range(0));
    const int bits = static_cast<int>(state.range(1));
    const Constellation c = Constellation::equidistant(order);
    const Quantizer q = spread_quantizer(bits, order);
    const ChannelModel ch{2, 1, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sep_closed_form(c, q, ch, 1000.0));
    }
}
BENCHMARK(BM_SepClosedForm)->Args({4, 2})->Args({4, 4})->Args({8, 3})->Args({8, 6});

void BM_SepQuadrature(benchmark::State& state)
{
    const int order = static_cast<int>(state.range(0));
    const int bits = static_cast<int>(state.range(1));
    const Constellation c = Constellation::equidistant(order);
    const Quantizer q = spread_quantizer(bits, order);
    const ChannelModel ch{2, 1, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sep_quadrature(c, q, ch, 1000.0));
    }
}
BENCHMARK(BM_SepQuadrature)->Args({4, 2})->Args({8, 3})->Unit(benchmark::kMicrosecond);

void BM_SepNoiseless(benchmark::State& state)
{
    const Constellation c = Constellation::equidistant(8);
    const Quantizer q = spread_quantizer(static_cast<int>(state.range(0)), 8);
    const ChannelModel ch{1.5, 1, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sep_noiseless(c, q, ch));
    }
}
BENCHMARK(BM_SepNoiseless)->Arg(3)->Arg(8);

void BM_Simulate(benchmark::State& state)
{
    SimSpec s(Constellation::equidistant(4), Quantizer(3, {1.0, 2.0, 3.0}), ChannelModel{1, 1, 0});
    s.snr_db = {20.0};
    s.trials = 100'000;
    s.antennas = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(s));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 100'000);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
