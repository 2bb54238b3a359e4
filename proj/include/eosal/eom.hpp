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
#include <string_view>
#include <utility>
#include <vector>

#include "eosal/laser.hpp"
#include "eosal/signal.hpp"

namespace eosal {

/// Arbitrary-waveform-generator drive and the sideband order kept by the optical filter.
/// The drive phase is 2π f0 t + π K t², so the drive sweeps B = K·Tp hertz.
struct ChirpDriveParams {
    double modulation_index = 1.0;  // m, rad
    double chirp_rate = 1e14;  // K, Hz/s
    double offset_frequency = 7.5e9;  // f0, Hz
    double pulse_width = 50e-6;  // Tp, s
    double prf = 20e3;  // Hz
    int order = 2;  // q

    double bandwidth() const { return chirp_rate * pulse_width; }
    /// Optical chirp rate of the selected order, q·K.
    double optical_chirp_rate() const { return order * chirp_rate; }
    double optical_bandwidth() const { return std::abs(order) * bandwidth(); }
    double optical_offset() const { return order * offset_frequency; }

    void validate() const;
};

/// How the modulator maps the drive onto the optical field.
/// `phase` is an ideal phase modulator, exp(j m cos φ1): every integer order is present.
/// `even_order` keeps only the even orders, i.e. the field cos(m cos φ1).
enum class ModulatorModel { phase, even_order };

std::string_view to_string(ModulatorModel model);
std::optional<ModulatorModel> parse_modulator_model(std::string_view name);

PhaseTrack awg_drive_phase(const ChirpDriveParams& p, const TimeGrid& grid);

/// Baseband optical field after the modulator, exp(j(m cos φ1 + φ2)) for the phase model.
ComplexEnvelope phase_modulate(const PhaseTrack& drive, const PhaseTrack& laser, double m,
                               ModulatorModel model = ModulatorModel::phase);

struct Sideband {
    int order = 0;
    cplx coefficient;  // j^n J_n(m)
    double center_offset = 0.0;  // n·f0, Hz
    double chirp_rate = 0.0;  // n·K, Hz/s
    double power_fraction = 0.0;  // J_n(m)²
};

struct SidebandTable {
    double modulation_index = 0.0;
    std::vector<Sideband> orders;  // ascending, -N..N

    const Sideband& at(int n) const;
    double total_power() const;
    /// Power in orders with |n| <= max_abs_order.
    double power_within(int max_abs_order) const;
    /// Orders {0, ±2} only.
    double zero_and_second_power() const;
    double odd_power() const;
};

/// Exact expansion exp(j m cos ψ) = Σ j^n J_n(m) e^{jnψ}, truncated at |n| <= max_order.
SidebandTable sideband_table(double m, const ChirpDriveParams& p, int max_order);

/// Power measured in the spectral region [(n-1/2)f0, (n+1/2)f0) of a modulated field,
/// as a fraction of the total field energy.
struct BandPower {
    int order = 0;
    double power_fraction = 0.0;
    double occupied_width = 0.0;  // Hz between the 0.5 % and 99.5 % cumulative-power points
};

std::vector<BandPower> measure_sideband_powers(const ComplexEnvelope& field, double f0, int max_order);

/// Passband [q f0 - |q|B/2 - g, q f0 + |q|B/2 + g] with g = guard_fraction·B.
std::pair<double, double> order_passband(const ChirpDriveParams& p, double guard_fraction);

/// Optical filter that keeps order q. Output stays on the input grid and carrier.
ComplexEnvelope select_order(const ComplexEnvelope& env, const ChirpDriveParams& p, double guard_fraction = 0.2,
                             double edge_width = 0.0);

/// Moves order q to 0 Hz, so the envelope is referenced to f_c + q·f0.
ComplexEnvelope to_order_baseband(const ComplexEnvelope& env, const ChirpDriveParams& p);

/// Another order whose swept band (or an alias of it) reaches into the order-q passband.
struct OrderIntrusion {
    int order = 0;
    double overlap_lo = 0.0;  // Hz
    double overlap_hi = 0.0;  // Hz
    double power_fraction = 0.0;
    bool aliased = false;
};

std::vector<OrderIntrusion> order_intrusions(const ChirpDriveParams& p, double sample_rate, double guard_fraction,
                                             ModulatorModel model = ModulatorModel::phase, int max_order = 12,
                                             double power_floor = 1e-14);

/// Smallest f0 for which no neighbouring order of the phase model overlaps the passband
/// (ignoring aliasing): (2|q|+1)·B/2 + guard.
double minimum_isolating_offset(const ChirpDriveParams& p, double guard_fraction);

struct FilterFeasibilityReport {
    double delta_f0 = 0.0;  // c·Δλ/(λ1 λ2), Hz
    double required_interval = 0.0;  // delta_f0 + K·Tp, Hz
    double modulator_bandwidth = 0.0;  // Hz
    bool feasible = false;
    double separation_interval = 0.0;  // 2 f0 + K·Tp, Hz
    bool separation_ok = false;  // delta_f0 < separation_interval
};

FilterFeasibilityReport filter_feasibility(double delta_lambda, double lambda1, double lambda2,
                                           const ChirpDriveParams& p, double modulator_bw);

/// Ideal amplifier: amplitude gain, no added noise.
ComplexEnvelope edfa_amplify(const ComplexEnvelope& env, double gain);

struct ChirpLinearity {
    double chirp_rate = 0.0;  // fitted slope, Hz/s
    double center_frequency = 0.0;  // fitted frequency at t = 0, Hz
    double rms_deviation = 0.0;  // Hz
    double relative_deviation = 0.0;  // rms_deviation / nominal_bandwidth
};

/// Fits a line to the instantaneous frequency over the central fraction of the grid.
ChirpLinearity measure_chirp_linearity(const ComplexEnvelope& env, double central_fraction, double nominal_bandwidth);

}  // namespace eosal
