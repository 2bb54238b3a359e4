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

#include "eosal/scene.hpp"

#include <cmath>

#include "eosal/error.hpp"
#include "eosal/fft.hpp"
#include "eosal/parallel.hpp"

namespace eosal {

std::string_view to_string(BeamShape shape) { return shape == BeamShape::uniform ? "uniform" : "gaussian"; }

std::optional<BeamShape> parse_beam_shape(std::string_view name) {
    if (name == "uniform") return BeamShape::uniform;
    if (name == "gaussian") return BeamShape::gaussian;
    return std::nullopt;
}

std::size_t SceneGeometry::pulse_count() const {
    const double n = std::round(aperture_time() * prf);
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

double SceneGeometry::reference_delay() const { return 2.0 * ref_range() / kSpeedOfLight; }

double SceneGeometry::reference_scale() const { return splitter_99_1 ? std::sqrt(0.01) : 1.0; }

double SceneGeometry::transmit_scale() const { return splitter_99_1 ? std::sqrt(0.99) : 1.0; }

void SceneGeometry::validate() const {
    if (!(wavelength > 0.0)) throw InvalidArgument("geometry: wavelength must be positive");
    if (!(divergence > 0.0)) throw InvalidArgument("geometry: divergence must be positive");
    if (!(standoff_range > 0.0)) throw InvalidArgument("geometry: standoff range must be positive");
    if (!(platform_speed > 0.0)) throw InvalidArgument("geometry: platform speed must be positive");
    if (!(prf > 0.0)) throw InvalidArgument("geometry: prf must be positive");
    if (reference_range && !(*reference_range >= 0.0))
        throw InvalidArgument("geometry: reference range must be non-negative");
}

std::vector<double> slow_time_axis(const SceneGeometry& g) {
    const std::size_t n = g.pulse_count();
    std::vector<double> t(n);
    const double mid = 0.5 * static_cast<double>(n - 1);
    for (std::size_t m = 0; m < n; ++m) t[m] = (static_cast<double>(m) - mid) / g.prf;
    return t;
}

namespace {

long double slant_range_ld(const SceneGeometry& g, const PointTarget& tgt, double t_m) {
    const long double r = static_cast<long double>(g.standoff_range) + tgt.range_offset;
    const long double x = static_cast<long double>(g.platform_speed) * t_m - tgt.azimuth_position;
    return std::sqrt(r * r + x * x);
}

// Bins k < ceil(L/2) are non-negative frequencies.
long signed_index(std::size_t k, std::size_t n) {
    return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace

double slant_range(const SceneGeometry& g, const PointTarget& tgt, double t_m) {
    return static_cast<double>(slant_range_ld(g, tgt, t_m));
}

long double round_trip_delay(const SceneGeometry& g, const PointTarget& tgt, double t_m) {
    return 2.0L * slant_range_ld(g, tgt, t_m) / static_cast<long double>(kSpeedOfLight);
}

cplx carrier_rotation(double carrier_frequency, long double delay) {
    const long double cycles = static_cast<long double>(carrier_frequency) * delay;
    const long double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -kTwoPi * static_cast<double>(frac));
}

double beam_weight(const SceneGeometry& g, double along_track_offset) {
    const double half = 0.5 * g.footprint();
    const double u = std::abs(along_track_offset);
    if (g.beam == BeamShape::uniform) return u <= half * (1.0 + 1e-12) ? 1.0 : 0.0;
    // Two-way amplitude falls to one half at the footprint edge.
    if (u > 3.0 * half) return 0.0;
    return std::exp(-std::log(2.0) * (u / half) * (u / half));
}

std::vector<DelayedCopy> echo_contributions(const SceneGeometry& g, std::span<const PointTarget> targets, double t_m,
                                            double carrier_frequency) {
    const long double t_ref = 2.0L * static_cast<long double>(g.ref_range()) / static_cast<long double>(kSpeedOfLight);
    std::vector<DelayedCopy> out;
    out.reserve(targets.size());
    for (const auto& tgt : targets) {
        const double w = beam_weight(g, g.platform_speed * t_m - tgt.azimuth_position);
        if (w == 0.0) continue;
        const long double t_o = round_trip_delay(g, tgt, t_m);
        out.push_back({static_cast<double>(t_o - t_ref),
                       tgt.reflectivity * (w * g.transmit_scale()) * carrier_rotation(carrier_frequency, t_o)});
    }
    return out;
}

std::size_t next_fast_length(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

EchoSynthesizer::EchoSynthesizer(const ComplexEnvelope& tx, double max_delay) : grid_(tx.grid) {
    if (tx.size() == 0) throw InvalidArgument("echo: empty transmit envelope");
    if (!(max_delay >= 0.0)) throw InvalidArgument("echo: max_delay must be non-negative");
    max_delay_ = max_delay;
    const std::size_t n = tx.size();
    const auto guard = static_cast<std::size_t>(std::ceil(max_delay * grid_.sample_rate)) + 8;
    padded_ = next_fast_length(n + 2 * guard);
    pad_front_ = (padded_ - n) / 2;
    spectrum_.assign(padded_, cplx{});
    std::copy(tx.samples.begin(), tx.samples.end(), spectrum_.begin() + static_cast<long>(pad_front_));
    fft::forward(spectrum_);
}

ComplexEnvelope EchoSynthesizer::delayed_sum(std::span<const DelayedCopy> copies) const {
    for (const auto& c : copies)
        if (std::abs(c.delay) > max_delay_ * (1.0 + 1e-12))
            throw NotRepresentable("echo: delay exceeds the representable window");

    const double df = grid_.sample_rate / static_cast<double>(padded_);
    std::vector<cplx> acc(padded_);
    constexpr std::size_t block = 512;
    for (const auto& c : copies) {
        if (c.amplitude == cplx{}) continue;
        for (std::size_t k0 = 0; k0 < padded_; k0 += block) {
            const std::size_t k1 = std::min(padded_, k0 + block);
            // Exact phasor at the block start, recurrence inside; restart at the sign wrap.
            std::size_t k = k0;
            while (k < k1) {
                const long b = signed_index(k, padded_);
                std::size_t end = k1;
                if (b >= 0 && static_cast<std::size_t>(b) < (padded_ + 1) / 2)
                    end = std::min(k1, (padded_ + 1) / 2);
                const double cycles = static_cast<double>(b) * df * c.delay;
                cplx ph = c.amplitude * std::polar(1.0, -kTwoPi * (cycles - std::floor(cycles)));
                const cplx step = std::polar(1.0, -kTwoPi * df * c.delay);
                for (; k < end; ++k) {
                    acc[k] += spectrum_[k] * ph;
                    ph *= step;
                }
            }
        }
    }
    fft::inverse(acc);
    ComplexEnvelope out(grid_);
    std::copy_n(acc.begin() + static_cast<long>(pad_front_), grid_.num_samples, out.samples.begin());
    return out;
}

JonesField synthesize_echo(const ComplexEnvelope& tx, const SceneGeometry& g, const PointTarget& tgt, double t_m,
                           double carrier_frequency) {
    const PointTarget one[] = {tgt};
    const auto copies = echo_contributions(g, one, t_m, carrier_frequency);
    double max_delay = 0.0;
    for (const auto& c : copies) max_delay = std::max(max_delay, std::abs(c.delay));
    if (max_delay > 0.5 * tx.grid.duration()) throw NotRepresentable("echo: delay beyond the fast-time grid");
    const EchoSynthesizer synth(tx, max_delay);
    return JonesField::diagonal(synth.delayed_sum(copies));
}

JonesField synthesize_reference(const ComplexEnvelope& tx, const SceneGeometry& g, double carrier_frequency) {
    const long double t_ref = 2.0L * static_cast<long double>(g.ref_range()) / static_cast<long double>(kSpeedOfLight);
    const cplx rot = carrier_rotation(carrier_frequency, t_ref) * g.reference_scale();
    ComplexEnvelope w(tx.grid);
    for (std::size_t i = 0; i < tx.size(); ++i) w.samples[i] = tx.samples[i] * rot;
    return JonesField::horizontal_only(w);
}

PulseSet build_pulse_set(const ComplexEnvelope& tx, const SceneGeometry& g, std::span<const PointTarget> targets,
                         double carrier_frequency, unsigned threads) {
    g.validate();
    PulseSet set;
    set.slow_time = slow_time_axis(g);
    set.reference = synthesize_reference(tx, g, carrier_frequency);

    std::vector<std::vector<DelayedCopy>> per_pulse(set.slow_time.size());
    double max_delay = 0.0;
    for (std::size_t m = 0; m < per_pulse.size(); ++m) {
        per_pulse[m] = echo_contributions(g, targets, set.slow_time[m], carrier_frequency);
        for (const auto& c : per_pulse[m]) max_delay = std::max(max_delay, std::abs(c.delay));
    }
    if (max_delay > 0.5 * tx.grid.duration()) throw NotRepresentable("echo: delay beyond the fast-time grid");
    const EchoSynthesizer synth(tx, max_delay);
    set.echoes.resize(per_pulse.size());
    parallel_for(
        per_pulse.size(), [&](std::size_t m) { set.echoes[m] = JonesField::diagonal(synth.delayed_sum(per_pulse[m])); },
        threads);
    return set;
}

}  // namespace eosal
