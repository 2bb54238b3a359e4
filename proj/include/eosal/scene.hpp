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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eosal/jones.hpp"
#include "eosal/signal.hpp"

namespace eosal {

enum class BeamShape { uniform, gaussian };

std::string_view to_string(BeamShape shape);
std::optional<BeamShape> parse_beam_shape(std::string_view name);

/// Side-looking strip-map geometry. Azimuth is along-track, range offsets are measured
/// from the standoff range R.
struct SceneGeometry {
    double wavelength = 1550e-9;  // m
    double divergence = 0.1e-3;  // rad, full beam angle
    double standoff_range = 10e3;  // m, R
    double platform_speed = 50.0;  // m/s, v
    double prf = 20e3;  // Hz
    std::optional<double> reference_range;  // m, R_ref; defaults to R
    BeamShape beam = BeamShape::uniform;
    bool splitter_99_1 = false;  // 1 % of the transmitter feeds the reference arm

    double footprint() const { return divergence * standoff_range; }
    double aperture_time() const { return footprint() / platform_speed; }  // T_a
    std::size_t pulse_count() const;  // round(T_a·prf)
    double ref_range() const { return reference_range.value_or(standoff_range); }
    double reference_delay() const;  // t_ref = 2 R_ref / c
    double reference_scale() const;  // amplitude factor on the reference arm
    double transmit_scale() const;  // amplitude factor on the outgoing beam
    void validate() const;
};

struct PointTarget {
    double azimuth_position = 0.0;  // m
    double range_offset = 0.0;  // m, relative to R
    cplx reflectivity{1.0, 0.0};
};

/// Uniform slow-time samples centred on zero, one per pulse at 1/prf spacing.
std::vector<double> slow_time_axis(const SceneGeometry& g);

/// sqrt((R + range_offset)² + (v·t_m − azimuth_position)²)
double slant_range(const SceneGeometry& g, const PointTarget& tgt, double t_m);

/// 2·R_i(t_m)/c evaluated in extended precision.
long double round_trip_delay(const SceneGeometry& g, const PointTarget& tgt, double t_m);

/// exp(−j2π·F·delay) with the cycle count reduced before the angle is formed.
cplx carrier_rotation(double carrier_frequency, long double delay);

/// Two-way beam amplitude for a target at along-track offset u = v·t_m − azimuth_position.
double beam_weight(const SceneGeometry& g, double along_track_offset);

/// One scaled, delayed copy of the transmit envelope. Delay is relative to t_ref.
struct DelayedCopy {
    double delay = 0.0;  // s
    cplx amplitude{1.0, 0.0};
};

/// Delayed copies contributed by the targets to the pulse at slow time t_m. Targets
/// outside the beam are omitted. Amplitudes include the carrier rotation e^{-j2πF t_o}.
std::vector<DelayedCopy> echo_contributions(const SceneGeometry& g, std::span<const PointTarget> targets, double t_m,
                                            double carrier_frequency);

/// Applies sums of fractional delays to a fixed transmit envelope. The envelope is
/// zero-padded on both sides so delays do not wrap; its spectrum is computed once.
class EchoSynthesizer {
public:
    /// `max_delay` is the largest |delay| (s) that must be representable.
    EchoSynthesizer(const ComplexEnvelope& tx, double max_delay);

    const TimeGrid& grid() const { return grid_; }
    double max_delay() const { return max_delay_; }

    /// Σ amplitude·tx(t − delay) on the transmit grid. Throws NotRepresentable when a
    /// delay exceeds max_delay().
    ComplexEnvelope delayed_sum(std::span<const DelayedCopy> copies) const;

private:
    TimeGrid grid_;
    std::size_t padded_ = 0;
    std::size_t pad_front_ = 0;
    double max_delay_ = 0.0;
    std::vector<cplx> spectrum_;
};

/// Smallest length >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t next_fast_length(std::size_t n);

/// Echo of one target as a 45° field [s, s]/√2 with
/// s(t) = ρ·tx(t − (t_o − t_ref))·e^{−j2πF t_o}. The grid is fast time relative to t_ref.
JonesField synthesize_echo(const ComplexEnvelope& tx, const SceneGeometry& g, const PointTarget& tgt, double t_m,
                           double carrier_frequency);

/// Reference field [w, 0] with w(t) = tx(t)·e^{−j2πF t_ref} on the same relative grid.
JonesField synthesize_reference(const ComplexEnvelope& tx, const SceneGeometry& g, double carrier_frequency);

struct PulseSet {
    std::vector<double> slow_time;
    std::vector<JonesField> echoes;
    JonesField reference;  // identical for every pulse
};

/// Materializes every pulse. Intended for small grids; the imaging pipeline streams instead.
PulseSet build_pulse_set(const ComplexEnvelope& tx, const SceneGeometry& g, std::span<const PointTarget> targets,
                         double carrier_frequency, unsigned threads = 0);

}  // namespace eosal
