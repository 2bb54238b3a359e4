// SPDX-License-Identifier: Apache-2.0
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

#pragma once

#include <cstdint>
#include <vector>

#include "eosal/signal.hpp"

namespace eosal {

/// Non-ideal laser: sinusoidal frequency jitter plus Gaussian random frequency and
/// Gaussian random phase. All noise terms default to zero (ideal single-frequency laser).
struct LaserParams {
    double center_frequency = 0.0;  // Hz, informational in the baseband representation
    double jitter_amplitude = 0.0;  // Hz, A_F
    double jitter_frequency = 0.0;  // Hz, f_a
    double random_frequency_std = 0.0;  // Hz, std of the per-sample random frequency
    double random_phase_std = 0.0;  // rad, std of the per-sample random phase
    std::uint64_t seed = 0;

    void validate() const;
};

/// Phase φ(t) on a grid, in radians.
struct PhaseTrack {
    TimeGrid grid;
    std::vector<double> phase;
};

/// Laser phase excursion relative to the carrier:
///   (A_F/f_a)(1 - cos 2π f_a t)  +  2π·dt·cumsum(f_b)  +  φ_c
/// with f_b ~ N(0, σ_fb²) and φ_c ~ N(0, σ_φc²) drawn once per sample. The
/// random terms therefore depend on the sample rate. Deterministic for a given seed.
PhaseTrack synthesize_phase(const LaserParams& params, const TimeGrid& grid);

/// Multiplies every sample by exp(j·phase).
ComplexEnvelope apply_phase(const ComplexEnvelope& env, const PhaseTrack& track);

}  // namespace eosal
