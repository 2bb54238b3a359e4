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

// Shared signal builders, oracles and property checks for the unit tests and the
// acceptance runner.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eosal/config.hpp"
#include "eosal/eom.hpp"
#include "eosal/fft.hpp"
#include "eosal/imager.hpp"
#include "eosal/jones.hpp"
#include "eosal/pipeline.hpp"
#include "eosal/scene.hpp"
#include "eosal/signal.hpp"

namespace eosal::testing {

inline ComplexEnvelope chirp(double fs, double tp, double rate) {
    ComplexEnvelope e(make_grid(fs, tp));
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double t = e.grid.time(i);
        e.samples[i] = std::polar(1.0, kPi * rate * t * t);
    }
    return e;
}

inline ComplexEnvelope tone(const TimeGrid& g, double f, cplx amp = 1.0) {
    ComplexEnvelope e(g);
    for (std::size_t i = 0; i < e.size(); ++i) e.samples[i] = amp * std::polar(1.0, kTwoPi * f * g.time(i));
    return e;
}

inline ComplexEnvelope gaussian_pulse(const TimeGrid& g, double sigma, double f = 0.0) {
    ComplexEnvelope e(g);
    const double mid = g.time(g.num_samples / 2);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double t = g.time(i) - mid;
        e.samples[i] = std::exp(-0.5 * t * t / (sigma * sigma)) * std::polar(1.0, kTwoPi * f * t);
    }
    return e;
}

inline ComplexEnvelope random_envelope(const TimeGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexEnvelope e(g);
    for (auto& s : e.samples) s = {n(rng), n(rng)};
    return e;
}

inline double max_abs(const std::vector<cplx>& a) {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return a.size() == b.size() ? m : HUGE_VAL;
}

/// Index of the largest-magnitude spectrum bin.
inline std::size_t peak_bin(const Spectrum& s) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.values.size(); ++k)
        if (std::abs(s.values[k]) > std::abs(s.values[best])) best = k;
    return best;
}

/// Scene-centred geometry with R_ref = R.
inline SceneGeometry bench_geometry() {
    SceneGeometry g;
    g.reference_range = g.standoff_range;
    return g;
}

/// Full receiver for one pulse: echo of `targets` at slow time t_m, bench, beat assembly
/// and (optionally) RVP correction.
inline ComplexEnvelope receive_beat(const ComplexEnvelope& tx, const SceneGeometry& g,
                                    const std::vector<PointTarget>& targets, double carrier, const DechirpConfig& cfg,
                                    double t_m = 0.0, const BenchParams& bench = {}) {
    const auto copies = echo_contributions(g, targets, t_m, carrier);
    double max_delay = 0.0;
    for (const auto& c : copies) max_delay = std::max(max_delay, std::abs(c.delay));
    const EchoSynthesizer synth(tx, max_delay);
    const IQStream iq = detect(JonesField::diagonal(synth.delayed_sum(copies)), synthesize_reference(tx, g, carrier), bench);
    return rvp_correct(assemble_beat(iq, cfg), cfg);
}

/// Carrier of the optical order used by the receiver tests.
inline double test_carrier() { return kSpeedOfLight / 1550e-9 + 15e9; }

struct PropertyResult {
    std::string name;
    bool ok = false;
    double metric = 0.0;
    double limit = 0.0;
};

inline PropertyResult parseval_property(std::uint64_t seed) {
    double worst = 0.0;
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{1000}, std::size_t{65536}, std::size_t{1} << 22}) {
        TimeGrid g;
        g.sample_rate = 1e6;
        g.num_samples = n;
        g.t_start = -0.5 * static_cast<double>(n) / g.sample_rate;
        const auto e = random_envelope(g, seed + n);
        const double te = e.energy();
        worst = std::max(worst, std::abs(spectrum(e).energy() - te) / te);
    }
    return {"parseval", worst < 1e-9, worst, 1e-9};
}

inline PropertyResult bandpass_idempotence_property(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const TimeGrid g = make_grid(1e6, 8.192e-3);
    const auto x = random_envelope(g, seed);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        double a = u(rng) * 1e6, b = u(rng) * 1e6;
        if (a > b) std::swap(a, b);
        if (b - a < 1e3) b = a + 1e3;
        b = std::min(b, 0.5e6);
        const auto once = bandpass(x, a, b);
        const auto twice = bandpass(once, a, b);
        worst = std::max(worst, max_abs_diff(once.samples, twice.samples) / max_abs(x.samples));
    }
    return {"bandpass idempotence", worst < 1e-12, worst, 1e-12};
}

inline PropertyResult delay_composition_property(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-25.0, 25.0);
    TimeGrid g;
    g.sample_rate = 1.0;
    g.num_samples = 4096;
    g.t_start = -2048.0;
    const auto x = gaussian_pulse(g, 100.0, 0.01);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double t1 = u(rng), t2 = u(rng);
        const EchoSynthesizer s1(x, 60.0);
        const DelayedCopy c1[] = {{t1, 1.0}};
        const auto y1 = s1.delayed_sum(c1);
        const EchoSynthesizer s2(y1, 60.0);
        const DelayedCopy c2[] = {{t2, 1.0}};
        const auto y12 = s2.delayed_sum(c2);
        const DelayedCopy c12[] = {{t1 + t2, 1.0}};
        const auto direct = s1.delayed_sum(c12);
        worst = std::max(worst, max_abs_diff(y12.samples, direct.samples));
    }
    return {"delay composition", worst < 1e-9, worst, 1e-9};
}

inline PropertyResult hwp_involution_property(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const JonesMatrix h = hwp(u(rng));
        worst = std::max(worst, (h * h).max_abs_diff(JonesMatrix::identity()));
    }
    return {"HWP involution", worst < 1e-12, worst, 1e-12};
}

/// Peak phase after RVP correction minus 4πF·R_Δ/c, for targets spread over ±10 m.
/// Without correction the residual would swing by πγΔ² (several radians at the edge).
inline PropertyResult rvp_invariance_property(std::uint64_t seed) {
    const double gamma = 2e14, tp = 10e-6, fs = 4e9;
    const auto tx = chirp(fs, tp, gamma);
    SceneGeometry g = bench_geometry();
    DechirpConfig cfg;
    cfg.gamma = gamma;
    cfg.f_center = test_carrier();
    cfg.decimation = 100;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bins(-130, 130);
    const double bin_range = kSpeedOfLight / (2.0 * gamma * tp);
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (int k = 0; k < 12; ++k) {
        const int b = bins(rng);
        const PointTarget tgt{0.0, b * bin_range, {1.0, 0.0}};
        const auto beat = receive_beat(tx, g, {tgt}, cfg.f_center, cfg);
        const Spectrum s = spectrum(beat);
        const std::size_t idx = static_cast<std::size_t>(static_cast<long>(s.values.size() / 2) + b);
        const long double dt = round_trip_delay(g, tgt, 0.0) - 2.0L * g.ref_range() / kSpeedOfLight;
        const cplx expected = std::conj(carrier_rotation(cfg.f_center, dt));
        const double resid = std::arg(s.values[idx] * std::conj(expected));
        lo = std::min(lo, resid);
        hi = std::max(hi, resid);
    }
    const double spread = std::max(std::abs(lo), std::abs(hi));
    return {"RVP invariance", spread < 1e-2, spread, 1e-2};
}

inline ExperimentConfig small_fig5(double scale) {
    ExperimentConfig c = apply_scale(preset("fig5"), scale);
    c.outputs = OutputsConfig{};
    c.outputs.image = true;
    return c;
}

inline PropertyResult image_linearity_property(double scale) {
    ExperimentConfig c = small_fig5(scale);
    const auto tx = build_transmit_chain(c, false).tx;
    const auto all = c.targets;
    c.targets = {all[0], all[1]};
    const auto both = run_imaging(tx, c, 1).image.image;
    c.targets = {all[0]};
    const auto one = run_imaging(tx, c, 1).image.image;
    c.targets = {all[1]};
    const auto two = run_imaging(tx, c, 1).image.image;
    std::vector<cplx> sum(both.data.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = one.data[i] + two.data[i];
    const double err = max_abs_diff(both.data, sum) / max_abs(both.data);
    return {"image linearity", err < 1e-9, err, 1e-9};
}

inline PropertyResult determinism_property(double scale, std::uint64_t seed) {
    ExperimentConfig c = small_fig5(scale);
    c.seed = seed;
    c.laser.seed = seed;
    c.laser.random_phase_std = 0.05;
    c.laser.random_frequency_std = 1e3;
    c.laser.jitter_amplitude = 1e3;
    c.laser.jitter_frequency = 1e3;
    const auto tx = build_transmit_chain(c, false).tx;
    const auto a = run_imaging(tx, c, 2).image.image.data;
    const auto b = run_imaging(tx, c, 1).image.image.data;
    c.seed = seed + 1;
    const auto other = run_imaging(tx, c, 1).image.image.data;
    const bool same = a == b;
    const bool differs = !(a == other);
    return {"determinism by seed", same && differs, same ? 0.0 : max_abs_diff(a, b), 0.0};
}

}  // namespace eosal::testing
