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

#include <vector>

namespace pamq {

struct ScalarQuantizerDesign
{
    std::vector<double> thresholds;       ///< positive decision thresholds
    std::vector<double> reconstruction;   ///< positive reconstruction points
    double distortion = 0.0;              ///< mean squared error for N(0, 1)
};

/// Distortion-minimizing symmetric 2^bits-level quantizer for a unit Gaussian
/// (Lloyd's algorithm iterated to a fixed point).
ScalarQuantizerDesign lloyd_max(int bits);

/// Default AQNM factor 1 - distortion for a b-bit ADC.
double aqnm_alpha(int bits);

}  // namespace pamq
