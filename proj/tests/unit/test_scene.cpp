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
#include <random>

#include "eosal/error.hpp"
#include "eosal/scene.hpp"
#include "eosal_test_util.hpp"

using namespace eosal;
using namespace eosal::testing;

TEST_CASE("slant range") {
    const SceneGeometry g;
    const PointTarget origin;
    CHECK(slant_range(g, origin, 0.01) == doctest::Approx(std::sqrt(1e8 + 0.25)).epsilon(1e-15));
    CHECK(slant_range(g, origin, 0.01) - 1e4 == doctest::Approx(1.25e-5).epsilon(1e-6));
    const PointTarget off{0.2, 0.03, {1.0, 0.0}};
    CHECK(slant_range(g, off, 0.2 / g.platform_speed) == doctest::Approx(1e4 + 0.03).epsilon(1e-15));
    CHECK(slant_range(g, origin, 0.007) == slant_range(g, origin, -0.007));
    CHECK(static_cast<double>(round_trip_delay(g, origin, 0.0)) == doctest::Approx(2e4 / kSpeedOfLight));
}

TEST_CASE("aperture and slow time") {
    const SceneGeometry g;
    CHECK(g.footprint() == doctest::Approx(1.0));
    CHECK(g.aperture_time() == doctest::Approx(0.02));
    CHECK(g.pulse_count() == 400);
    const auto t = slow_time_axis(g);
    REQUIRE(t.size() == 400);
    for (std::size_t m = 1; m < t.size(); ++m) CHECK(t[m] - t[m - 1] == doctest::Approx(1.0 / g.prf));
    CHECK(t.front() == doctest::Approx(-t.back()));
}

TEST_CASE("zero delay echo is the transmit at 45 degrees") {
    const auto tx = chirp(4e9, 2e-6, 2e14);
    const SceneGeometry g = bench_geometry();
    const double f = test_carrier();
    const auto echo = synthesize_echo(tx, g, PointTarget{}, 0.0, f);
    const cplx rot = carrier_rotation(f, round_trip_delay(g, PointTarget{}, 0.0)) * std::sqrt(0.5);
    for (std::size_t i = 0; i < tx.size(); ++i) {
        CHECK(std::abs(echo.horizontal[i] - tx.samples[i] * rot) < 1e-12);
        CHECK(echo.horizontal[i] == echo.vertical[i]);
    }
}

TEST_CASE("integer-sample delay is an exact shift") {
    TimeGrid grid;
    grid.sample_rate = 1.0;
    grid.num_samples = 2048;
    grid.t_start = -1024.0;
    const auto x = gaussian_pulse(grid, 60.0, 0.05);
    const EchoSynthesizer synth(x, 40.0);
    const DelayedCopy c[] = {{17.0, 1.0}};
    const auto y = synth.delayed_sum(c);
    for (std::size_t i = 17; i < grid.num_samples; ++i) CHECK(std::abs(y.samples[i] - x.samples[i - 17]) < 1e-12);
    const DelayedCopy far[] = {{41.0, 1.0}};
    CHECK_THROWS_AS(synth.delayed_sum(far), NotRepresentable);
}

TEST_CASE("delays compose") {
    const auto r = delay_composition_property(21);
    CHECK_MESSAGE(r.ok, r.metric);
}

TEST_CASE("carrier rotation at 5 ns") {
    const double f = kSpeedOfLight / 1550e-9 + 15e9;
    const cplx got = carrier_rotation(f, 5e-9L);
    // Independent route: exact cycles from the integer and fractional parts of f.
    const double whole = std::floor(f / 1e6) * 1e6;
    const double cycles_whole = std::fmod(whole * 5e-9, 1.0);
    const double cycles_frac = (f - whole) * 5e-9;
    const cplx want = std::polar(1.0, -kTwoPi * std::fmod(cycles_whole + cycles_frac, 1.0));
    CHECK(std::abs(std::arg(got / want)) < 1e-9);
}

TEST_CASE("reference arm") {
    const auto tx = chirp(1e9, 1e-6, 1e14);
    SceneGeometry g;
    g.reference_range = 0.0;
    const auto w = synthesize_reference(tx, g, test_carrier());
    for (std::size_t i = 0; i < tx.size(); ++i) {
        CHECK(std::abs(w.horizontal[i] - tx.samples[i]) < 1e-15);
        CHECK(w.vertical[i] == cplx{});
    }
    g.splitter_99_1 = true;
    const auto weak = synthesize_reference(tx, g, test_carrier());
    CHECK(weak.energy() == doctest::Approx(0.01 * w.energy()).epsilon(1e-12));
}

TEST_CASE("matched reference gives a DC beat for the centre target") {
    const auto tx = chirp(4e9, 10e-6, 2e14);
    const SceneGeometry g = bench_geometry();
    DechirpConfig cfg;
    cfg.f_center = test_carrier();
    cfg.decimation = 100;
    cfg.rvp_correction = false;
    const auto b = receive_beat(tx, g, {PointTarget{}}, cfg.f_center, cfg);
    for (std::size_t i = 5; i + 5 < b.size(); ++i) CHECK(std::abs(b.samples[i] - b.samples[b.size() / 2]) < 1e-9);
}

TEST_CASE("beam weighting") {
    SceneGeometry g;
    CHECK(beam_weight(g, 0.49) == 1.0);
    CHECK(beam_weight(g, 0.51) == 0.0);
    const PointTarget outside{3.0, 0.0, {1.0, 0.0}};
    const PointTarget one[] = {outside};
    CHECK(echo_contributions(g, one, 0.0, test_carrier()).empty());
    g.beam = BeamShape::gaussian;
    CHECK(beam_weight(g, 0.5) == doctest::Approx(0.5));
    CHECK(beam_weight(g, 0.0) == 1.0);
    CHECK(beam_weight(g, 1.6) == 0.0);
    CHECK(parse_beam_shape("gaussian") == BeamShape::gaussian);
}

TEST_CASE("beat frequency follows the range offset") {
    const double gamma = 2e14, tp = 10e-6;
    const auto tx = chirp(4e9, tp, gamma);
    const SceneGeometry g = bench_geometry();
    DechirpConfig cfg;
    cfg.gamma = gamma;
    cfg.f_center = test_carrier();
    cfg.decimation = 100;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 20; ++k) {
        const double r_delta = u(rng);
        const auto b = receive_beat(tx, g, {PointTarget{0.0, r_delta, {1.0, 0.0}}}, cfg.f_center, cfg);
        const Spectrum s = spectrum(b);
        const double fb = 2.0 * gamma * r_delta / kSpeedOfLight;
        CHECK(std::abs(s.freqs[peak_bin(s)] - fb) <= 0.5 * s.resolution_bw);
    }
}

TEST_CASE("pulse set") {
    SceneGeometry g = bench_geometry();
    g.prf = 2e3;
    const auto tx = chirp(1e9, 2e-6, 1e14);
    const PointTarget targets[] = {PointTarget{}, PointTarget{0.1, 0.05, {0.5, 0.0}}};
    const auto set = build_pulse_set(tx, g, targets, test_carrier(), 2);
    CHECK(set.slow_time.size() == 40);
    CHECK(set.echoes.size() == 40);
    double max_delay = 0.0;
    for (double t : set.slow_time)
        for (const auto& c : echo_contributions(g, targets, t, test_carrier())) max_delay = std::max(max_delay, std::abs(c.delay));
    const EchoSynthesizer synth(tx, max_delay);
    for (std::size_t m = 0; m < set.echoes.size(); m += 13) {
        const auto copies = echo_contributions(g, targets, set.slow_time[m], test_carrier());
        const auto want = synth.delayed_sum(copies);
        for (std::size_t i = 0; i < tx.size(); ++i)
            CHECK(std::abs(set.echoes[m].horizontal[i] - want.samples[i] * std::sqrt(0.5)) < 1e-9);
    }
    SceneGeometry far = g;
    const PointTarget distant[] = {PointTarget{0.0, 1e3, {1.0, 0.0}}};
    CHECK_THROWS_AS(build_pulse_set(tx, far, distant, test_carrier()), NotRepresentable);
}

TEST_CASE("fast lengths") {
    CHECK(next_fast_length(1) == 1);
    CHECK(next_fast_length(11) == 12);
    CHECK(next_fast_length(1009) == 1024);
    CHECK(next_fast_length(2401) == 2401);
}
