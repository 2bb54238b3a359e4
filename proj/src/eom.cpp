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

#include "eosal/eom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "eosal/bessel.hpp"
#include "eosal/error.hpp"

namespace eosal {
namespace {

cplx j_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double order_weight(int n, double m, ModulatorModel model) {
    if (model == ModulatorModel::even_order && (std::abs(n) % 2 == 1)) return 0.0;
    const double j = bessel_j(n, m);
    return j * j;
}

}  // namespace

void ChirpDriveParams::validate() const {
    if (!(modulation_index > 0.0)) throw InvalidArgument("drive: modulation index m must be > 0");
    if (!(chirp_rate > 0.0)) throw InvalidArgument("drive: chirp rate K must be > 0");
    if (!(pulse_width > 0.0)) throw InvalidArgument("drive: pulse width Tp must be > 0");
    if (offset_frequency < 0.0) throw InvalidArgument("drive: offset frequency f0 must be >= 0");
    if (order == 0) throw InvalidArgument("drive: selected order q must be non-zero");
}

std::string_view to_string(ModulatorModel model) {
    return model == ModulatorModel::phase ? "phase" : "even_order";
}

std::optional<ModulatorModel> parse_modulator_model(std::string_view name) {
    if (name == "phase") return ModulatorModel::phase;
    if (name == "even_order") return ModulatorModel::even_order;
    return std::nullopt;
}

PhaseTrack awg_drive_phase(const ChirpDriveParams& p, const TimeGrid& grid) {
    PhaseTrack track{grid, std::vector<double>(grid.num_samples)};
    for (std::size_t i = 0; i < grid.num_samples; ++i) {
        const double t = grid.time(i);
        track.phase[i] = kTwoPi * p.offset_frequency * t + kPi * p.chirp_rate * t * t;
    }
    return track;
}

ComplexEnvelope phase_modulate(const PhaseTrack& drive, const PhaseTrack& laser, double m, ModulatorModel model) {
    if (!drive.grid.matches(laser.grid) || drive.phase.size() != laser.phase.size())
        throw GridMismatch("phase_modulate: drive and laser tracks are on different grids");
    ComplexEnvelope out(drive.grid);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double c = std::cos(drive.phase[i]);
        if (model == ModulatorModel::phase) {
            out.samples[i] = std::polar(1.0, m * c + laser.phase[i]);
        } else {
            out.samples[i] = std::cos(m * c) * std::polar(1.0, laser.phase[i]);
        }
    }
    return out;
}

const Sideband& SidebandTable::at(int n) const {
    for (const auto& s : orders)
        if (s.order == n) return s;
    throw InvalidArgument("sideband table has no order " + std::to_string(n));
}

double SidebandTable::total_power() const {
    double p = 0.0;
    for (const auto& s : orders) p += s.power_fraction;
    return p;
}

double SidebandTable::power_within(int max_abs_order) const {
    double p = 0.0;
    for (const auto& s : orders)
        if (std::abs(s.order) <= max_abs_order) p += s.power_fraction;
    return p;
}

double SidebandTable::zero_and_second_power() const {
    return at(0).power_fraction + at(2).power_fraction + at(-2).power_fraction;
}

double SidebandTable::odd_power() const {
    double p = 0.0;
    for (const auto& s : orders)
        if (std::abs(s.order) % 2 == 1) p += s.power_fraction;
    return p;
}

SidebandTable sideband_table(double m, const ChirpDriveParams& p, int max_order) {
    if (max_order < 2) throw InvalidArgument("sideband_table: max_order must be >= 2");
    SidebandTable table;
    table.modulation_index = m;
    for (int n = -max_order; n <= max_order; ++n) {
        const double jn = bessel_j(n, m);
        table.orders.push_back({n, j_power(n) * jn, n * p.offset_frequency, n * p.chirp_rate, jn * jn});
    }
    return table;
}

std::vector<BandPower> measure_sideband_powers(const ComplexEnvelope& field, double f0, int max_order) {
    if (!(f0 > 0.0)) throw InvalidArgument("measure_sideband_powers: f0 must be > 0");
    if ((max_order + 0.5) * f0 > 0.5 * field.grid.sample_rate)
        throw NotRepresentable("measure_sideband_powers: order regions exceed the Nyquist band");
    const Spectrum spec = spectrum(field);
    const double total = spec.energy();
    std::vector<BandPower> out;
    for (int n = -max_order; n <= max_order; ++n) {
        const double lo = (n - 0.5) * f0;
        const double hi = (n + 0.5) * f0;
        auto first = std::lower_bound(spec.freqs.begin(), spec.freqs.end(), lo);
        auto last = std::lower_bound(spec.freqs.begin(), spec.freqs.end(), hi);
        const auto i0 = static_cast<std::size_t>(first - spec.freqs.begin());
        const auto i1 = static_cast<std::size_t>(last - spec.freqs.begin());
        double band = 0.0;
        for (std::size_t i = i0; i < i1; ++i) band += std::norm(spec.values[i]);

        double width = 0.0;
        if (band > 0.0) {
            double acc = 0.0;
            double f_low = spec.freqs[i0], f_high = spec.freqs[i1 > i0 ? i1 - 1 : i0];
            bool have_low = false;
            for (std::size_t i = i0; i < i1; ++i) {
                acc += std::norm(spec.values[i]);
                if (!have_low && acc >= 0.005 * band) {
                    f_low = spec.freqs[i];
                    have_low = true;
                }
                if (acc >= 0.995 * band) {
                    f_high = spec.freqs[i];
                    break;
                }
            }
            width = f_high - f_low;
        }
        out.push_back({n, band * spec.resolution_bw / total, width});
    }
    return out;
}

std::pair<double, double> order_passband(const ChirpDriveParams& p, double guard_fraction) {
    const double center = p.optical_offset();
    const double half = 0.5 * p.optical_bandwidth() + guard_fraction * p.bandwidth();
    return {center - half, center + half};
}

ComplexEnvelope select_order(const ComplexEnvelope& env, const ChirpDriveParams& p, double guard_fraction,
                             double edge_width) {
    p.validate();
    if (guard_fraction < 0.0) throw InvalidArgument("select_order: guard fraction must be >= 0");
    const auto [lo, hi] = order_passband(p, guard_fraction);
    const double nyq = 0.5 * env.grid.sample_rate;
    if (lo - 0.5 * edge_width < -nyq || hi + 0.5 * edge_width > nyq)
        throw NotRepresentable("select_order: order passband does not fit the simulation band");
    return bandpass(env, lo, hi, edge_width);
}

ComplexEnvelope to_order_baseband(const ComplexEnvelope& env, const ChirpDriveParams& p) {
    return frequency_shift(env, p.optical_offset());
}

std::vector<OrderIntrusion> order_intrusions(const ChirpDriveParams& p, double sample_rate, double guard_fraction,
                                             ModulatorModel model, int max_order, double power_floor) {
    const auto [lo, hi] = order_passband(p, guard_fraction);
    const double fs = sample_rate;
    std::vector<OrderIntrusion> out;
    for (int n = -max_order; n <= max_order; ++n) {
        const double power = order_weight(n, p.modulation_index, model);
        if (power <= power_floor) continue;
        const double band_lo = n * p.offset_frequency - 0.5 * std::abs(n) * p.bandwidth();
        const double band_hi = n * p.offset_frequency + 0.5 * std::abs(n) * p.bandwidth();
        // Shift the swept band by multiples of Fs and intersect with the passband.
        const long k_min = static_cast<long>(std::floor((lo - band_hi) / fs));
        const long k_max = static_cast<long>(std::ceil((hi - band_lo) / fs));
        for (long k = k_min; k <= k_max; ++k) {
            if (n == p.order && k == 0) continue;
            const double a = std::max(lo, band_lo + k * fs);
            const double b = std::min(hi, band_hi + k * fs);
            if (b > a) out.push_back({n, a, b, power, k != 0});
        }
    }
    return out;
}

double minimum_isolating_offset(const ChirpDriveParams& p, double guard_fraction) {
    return (2.0 * std::abs(p.order) + 1.0) * 0.5 * p.bandwidth() + guard_fraction * p.bandwidth();
}

FilterFeasibilityReport filter_feasibility(double delta_lambda, double lambda1, double lambda2,
                                           const ChirpDriveParams& p, double modulator_bw) {
    if (!(delta_lambda > 0.0 && lambda1 > 0.0 && lambda2 > 0.0 && modulator_bw > 0.0))
        throw InvalidArgument("filter_feasibility: inputs must be positive");
    FilterFeasibilityReport r;
    r.delta_f0 = kSpeedOfLight * delta_lambda / (lambda1 * lambda2);
    r.required_interval = r.delta_f0 + p.bandwidth();
    r.modulator_bandwidth = modulator_bw;
    r.feasible = modulator_bw >= r.required_interval;
    r.separation_interval = 2.0 * p.offset_frequency + p.bandwidth();
    r.separation_ok = r.delta_f0 < r.separation_interval;
    return r;
}

ComplexEnvelope edfa_amplify(const ComplexEnvelope& env, double gain) {
    if (!(gain > 0.0)) throw InvalidArgument("edfa_amplify: gain must be > 0");
    ComplexEnvelope out = env;
    for (auto& v : out.samples) v *= gain;
    return out;
}

ChirpLinearity measure_chirp_linearity(const ComplexEnvelope& env, double central_fraction, double nominal_bandwidth) {
    if (!(central_fraction > 0.0 && central_fraction <= 1.0))
        throw InvalidArgument("measure_chirp_linearity: central fraction must be in (0, 1]");
    const auto inst = instantaneous_frequency(env);
    const double t_mid = env.grid.t_start + 0.5 * env.grid.duration();
    const double half_span = 0.5 * central_fraction * env.grid.duration();
    std::vector<double> t, f;
    t.reserve(inst.size());
    f.reserve(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const double ti = env.grid.time(i) + 0.5 * env.grid.dt();
        if (std::abs(ti - t_mid) <= half_span) {
            t.push_back(ti);
            f.push_back(inst[i]);
        }
    }
    const LineFit fit = fit_line(t, f);
    ChirpLinearity out;
    out.chirp_rate = fit.slope;
    out.center_frequency = fit.intercept;
    out.rms_deviation = fit.rms_residual;
    out.relative_deviation = nominal_bandwidth > 0.0 ? fit.rms_residual / nominal_bandwidth : 0.0;
    return out;
}

}  // namespace eosal
