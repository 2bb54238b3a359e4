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

#include "eosal/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "eosal/parallel.hpp"

namespace eosal {
namespace {

std::uint64_t pulse_seed(std::uint64_t seed, std::size_t pulse) {
    // splitmix64 step so neighbouring pulses get unrelated streams.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(pulse) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Pulses processed at once; each holds several full-rate buffers.
unsigned pulse_threads(unsigned requested) {
    const unsigned t = requested == 0 ? default_thread_count() : requested;
    return std::min(t, 8u);
}

}  // namespace

bool laser_is_ideal(const LaserParams& p) {
    return p.jitter_amplitude == 0.0 && p.random_frequency_std == 0.0 && p.random_phase_std == 0.0;
}

TransmitChain build_transmit_chain(const ExperimentConfig& cfg, bool with_laser) {
    cfg.drive.validate();
    const TimeGrid grid = make_grid(cfg.transmit.modulation_sample_rate, cfg.drive.pulse_width);
    const PhaseTrack drive = awg_drive_phase(cfg.drive, grid);
    LaserParams laser = cfg.laser;
    if (!with_laser) laser = LaserParams{laser.center_frequency};
    const PhaseTrack phase = synthesize_phase(laser, grid);

    TransmitChain out;
    out.modulated = phase_modulate(drive, phase, cfg.drive.modulation_index, cfg.transmit.model);
    out.filtered = select_order(out.modulated, cfg.drive, cfg.transmit.guard_fraction, cfg.transmit.filter_edge);
    out.order_baseband = to_order_baseband(out.filtered, cfg.drive);
    out.tx = edfa_amplify(decimate(out.order_baseband, cfg.transmit_decimation()), cfg.transmit.edfa_gain);
    return out;
}

std::vector<ComplexEnvelope> pulse_beats(const ComplexEnvelope& tx, const ExperimentConfig& cfg,
                                         std::span<const double> slow_time, unsigned threads) {
    const SceneGeometry& g = cfg.geometry;
    const double carrier = cfg.order_carrier();
    const DechirpConfig dcfg = cfg.dechirp_config();

    std::vector<std::vector<DelayedCopy>> copies(slow_time.size());
    double max_delay = 0.0;
    for (std::size_t m = 0; m < slow_time.size(); ++m) {
        copies[m] = echo_contributions(g, cfg.targets, slow_time[m], carrier);
        for (const auto& c : copies[m]) max_delay = std::max(max_delay, std::abs(c.delay));
    }
    if (max_delay > 0.5 * tx.grid.duration()) throw NotRepresentable("echo: delay beyond the fast-time grid");

    const bool ideal = laser_is_ideal(cfg.laser);
    std::optional<EchoSynthesizer> shared;
    JonesField shared_ref;
    if (ideal) {
        shared.emplace(tx, max_delay);
        shared_ref = synthesize_reference(tx, g, carrier);
    }

    std::vector<ComplexEnvelope> beats(slow_time.size());
    parallel_for(
        slow_time.size(),
        [&](std::size_t m) {
            IQStream iq;
            if (ideal) {
                iq = detect(JonesField::diagonal(shared->delayed_sum(copies[m])), shared_ref, cfg.bench);
            } else {
                LaserParams lp = cfg.laser;
                lp.seed = pulse_seed(cfg.seed, m);
                const ComplexEnvelope txm = apply_phase(tx, synthesize_phase(lp, tx.grid));
                const EchoSynthesizer synth(txm, max_delay);
                iq = detect(JonesField::diagonal(synth.delayed_sum(copies[m])), synthesize_reference(txm, g, carrier),
                            cfg.bench);
            }
            beats[m] = rvp_correct(assemble_beat(iq, dcfg), dcfg);
        },
        pulse_threads(threads));
    return beats;
}

ImagingResult run_imaging(const ComplexEnvelope& tx, const ExperimentConfig& cfg, unsigned threads) {
    cfg.geometry.validate();
    validate_physics(cfg);
    const SceneGeometry& g = cfg.geometry;
    const DechirpConfig dcfg = cfg.dechirp_config();
    const std::vector<double> slow = slow_time_axis(g);

    const auto beats = pulse_beats(tx, cfg, slow, threads);
    ImagingResult r;
    r.range_compressed = range_compress(beats, slow, g.ref_range(), dcfg);
    r.range_doppler = dcfg.rcmc ? rcmc(r.range_compressed, g) : r.range_compressed;
    r.max_range_migration = max_range_migration(g, slow);
    r.azimuth_rate = azimuth_fm_rate(g, dcfg.f_center);
    r.image = azimuth_compress(r.range_doppler, g, dcfg);
    r.image.peaks = find_peaks(r.image, std::max<std::size_t>(cfg.targets.size(), 1));
    return r;
}

double theoretical_range_width(const ExperimentConfig& cfg) {
    return 0.886 * kSpeedOfLight / (2.0 * cfg.drive.optical_bandwidth());
}

double theoretical_azimuth_width(const ExperimentConfig& cfg) {
    const double ka = azimuth_fm_rate(cfg.geometry, cfg.order_carrier());
    return 0.886 * cfg.geometry.platform_speed / (ka * cfg.geometry.aperture_time());
}

}  // namespace eosal
