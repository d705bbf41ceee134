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

#include "pamq/lloyd_max.hpp"
#include "pamq/optimizer.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pamq;

void BM_OptimizeQuantizer(benchmark::State& state)
{
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 4;
    p.bits = static_cast<int>(state.range(0));
    p.snr_db = 30.0;
    p.constellation = Constellation({1.0, 3.0});
    p.starts = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(p));
    }
}
BENCHMARK(BM_OptimizeQuantizer)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OptimizeJoint(benchmark::State& state)
{
    DesignProblem p;
    p.channel = {1, 1, 0};
    p.order = 4;
    p.bits = 3;
    p.variables = DesignVariables::joint_nonuniform;
    p.snr_db = 30.0;
    p.starts = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(p));
    }
}
BENCHMARK(BM_OptimizeJoint)->Unit(benchmark::kMillisecond);

void BM_LloydMax(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(lloyd_max(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_LloydMax)->Arg(3)->Arg(8);

}  // namespace
