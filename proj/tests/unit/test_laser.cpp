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

#include <doctest.h>

#include <cmath>

#include "eosal/error.hpp"
#include "eosal/laser.hpp"
#include "eosal_test_util.hpp"

using namespace eosal;
using namespace eosal::testing;

namespace {
double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}
}  // namespace

TEST_CASE("ideal laser has zero phase") {
    const auto track = synthesize_phase(LaserParams{}, make_grid(1e6, 1e-3));
    for (double p : track.phase) CHECK(p == 0.0);
}

TEST_CASE("sinusoidal jitter follows its closed-form integral") {
    LaserParams p;
    p.jitter_amplitude = 1e3;
    p.jitter_frequency = 1e3;
    const auto g = make_grid(1e6, 2e-3, false);
    const auto track = synthesize_phase(p, g);
    for (std::size_t i = 0; i < g.num_samples; i += 7) {
        const double t = g.time(i);
        CHECK(track.phase[i] == doctest::Approx(1.0 - std::cos(kTwoPi * 1e3 * t)).epsilon(1e-12));
    }
    // Half a jitter period in, the integral reaches its maximum 2·A_F/f_a.
    CHECK(track.phase[500] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("random phase has the requested spread") {
    LaserParams p;
    p.random_phase_std = 0.1;
    p.seed = 42;
    const auto track = synthesize_phase(p, make_grid(1e9, 1e-3));
    CHECK(std::abs(stddev(track.phase) - 0.1) < 5e-3);
    CHECK(std::abs(mean(track.phase)) < 1e-3);
}

TEST_CASE("random frequency integrates to a random walk") {
    LaserParams p;
    p.random_frequency_std = 1e4;
    p.seed = 7;
    const auto g = make_grid(1e6, 0.2);
    const auto track = synthesize_phase(p, g);
    std::vector<double> freq(track.phase.size() - 1);
    for (std::size_t i = 0; i + 1 < track.phase.size(); ++i)
        freq[i] = (track.phase[i + 1] - track.phase[i]) / (kTwoPi * g.dt());
    CHECK(stddev(freq) == doctest::Approx(1e4).epsilon(0.01));
}

TEST_CASE("phase tracks are reproducible by seed") {
    LaserParams p;
    p.random_phase_std = 0.2;
    p.random_frequency_std = 1e3;
    p.seed = 99;
    const auto g = make_grid(1e6, 1e-3);
    const auto a = synthesize_phase(p, g);
    const auto b = synthesize_phase(p, g);
    CHECK(a.phase == b.phase);
    p.seed = 100;
    CHECK_FALSE(synthesize_phase(p, g).phase == a.phase);
}

TEST_CASE("apply_phase rotates without changing magnitude") {
    const auto g = make_grid(1e6, 1e-4);
    const auto e = random_envelope(g, 1);
    LaserParams p;
    p.random_phase_std = 1.0;
    p.seed = 3;
    const auto out = apply_phase(e, synthesize_phase(p, g));
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(out.samples[i]) == doctest::Approx(std::abs(e.samples[i])));
    PhaseTrack flip{g, std::vector<double>(g.num_samples, kPi)};
    const auto neg = apply_phase(e, flip);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(neg.samples[i] + e.samples[i]) < 1e-12);
    CHECK_THROWS_AS(apply_phase(e, synthesize_phase(p, make_grid(2e6, 1e-4))), GridMismatch);
}

TEST_CASE("laser parameters are validated") {
    LaserParams p;
    p.random_phase_std = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}
