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

#include "eosal/laser.hpp"

#include <cmath>
#include <random>

#include "eosal/error.hpp"

namespace eosal {

void LaserParams::validate() const {
    if (jitter_amplitude < 0.0) throw InvalidArgument("laser: jitter amplitude must be >= 0");
    if (jitter_frequency < 0.0) throw InvalidArgument("laser: jitter frequency must be >= 0");
    if (random_frequency_std < 0.0) throw InvalidArgument("laser: random frequency std must be >= 0");
    if (random_phase_std < 0.0) throw InvalidArgument("laser: random phase std must be >= 0");
}

PhaseTrack synthesize_phase(const LaserParams& params, const TimeGrid& grid) {
    params.validate();
    PhaseTrack track{grid, std::vector<double>(grid.num_samples, 0.0)};

    if (params.jitter_amplitude > 0.0) {
        for (std::size_t i = 0; i < grid.num_samples; ++i) {
            const double t = grid.time(i);
            // ∫0^t 2π A_F sin(2π f_a τ) dτ, with the f_a -> 0 limit handled by the series form.
            const double x = kPi * params.jitter_frequency * t;
            const double term = params.jitter_frequency > 0.0
                                    ? (params.jitter_amplitude / params.jitter_frequency) * 2.0 * std::sin(x) * std::sin(x)
                                    : 0.0;
            track.phase[i] += term;
        }
    }

    std::mt19937_64 rng(params.seed);
    if (params.random_frequency_std > 0.0) {
        std::normal_distribution<double> fb(0.0, params.random_frequency_std);
        const double step = kTwoPi * grid.dt();
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.num_samples; ++i) {
            acc += step * fb(rng);
            track.phase[i] += acc;
        }
    }
    if (params.random_phase_std > 0.0) {
        std::normal_distribution<double> phic(0.0, params.random_phase_std);
        for (std::size_t i = 0; i < grid.num_samples; ++i) track.phase[i] += phic(rng);
    }
    return track;
}

ComplexEnvelope apply_phase(const ComplexEnvelope& env, const PhaseTrack& track) {
    if (!env.grid.matches(track.grid) || track.phase.size() != env.size())
        throw GridMismatch("apply_phase: track and envelope grids differ");
    ComplexEnvelope out(env.grid);
    for (std::size_t i = 0; i < env.size(); ++i) out.samples[i] = env.samples[i] * std::polar(1.0, track.phase[i]);
    return out;
}

}  // namespace eosal
