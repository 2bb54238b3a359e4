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

// Acceptance runner: one PASS/FAIL line per criterion, INFO lines for context.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "eosal/bessel.hpp"
#include "eosal/config.hpp"
#include "eosal/eom.hpp"
#include "eosal/imager.hpp"
#include "eosal/jones.hpp"
#include "eosal/ledger.hpp"
#include "eosal/pipeline.hpp"
#include "eosal_test_util.hpp"

using namespace eosal;
using namespace eosal::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class... Args>
void info(const char* fmt, Args... args) {
    std::printf("INFO ");
    if constexpr (sizeof...(Args) == 0) std::fputs(fmt, stdout);
    else std::printf(fmt, args...);
    std::printf("\n");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

void run_guarded(int id, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        verdict(id, false, std::string("threw: ") + e.what());
    }
}

ComplexEnvelope modulate(const ChirpDriveParams& p, const TimeGrid& g) {
    const PhaseTrack laser{g, std::vector<double>(g.num_samples, 0.0)};
    return phase_modulate(awg_drive_phase(p, g), laser, p.modulation_index);
}

void criterion1() {
    const auto t0 = Clock::now();
    TimeGrid g;
    g.sample_rate = 32.0;
    g.num_samples = std::size_t{1} << 20;
    g.t_start = -0.5 * static_cast<double>(g.num_samples) / g.sample_rate;
    ChirpDriveParams line;
    line.modulation_index = 1.0;
    line.offset_frequency = 1.0;
    line.chirp_rate = 0.0;
    const auto bands = measure_sideband_powers(modulate(line, g), 1.0, 5);
    double worst = 0.0;
    for (const auto& b : bands) worst = std::max(worst, std::abs(b.power_fraction / std::pow(bessel_j(b.order, 1.0), 2) - 1.0));
    const double elapsed = seconds_since(t0);
    verdict(1, worst < 1e-6 && elapsed < 10.0,
            fmt("max relative sideband power error %.3e (limit 1e-6) over |n| <= 5", worst) + fmt(", %.2f s (limit 10 s)", elapsed));

    // Chirped drive: sidebands overlap in frequency, so band integration is only indicative.
    const auto t1 = preset("table1");
    const auto gc = make_grid(t1.transmit.modulation_sample_rate, t1.drive.pulse_width);
    const auto cb = measure_sideband_powers(modulate(t1.drive, gc), t1.drive.offset_frequency, 2);
    for (const auto& b : cb)
        info("chirped drive order %+d: measured %.5f, J_n^2 %.5f", b.order, b.power_fraction, std::pow(bessel_j(b.order, 1.0), 2));
    const auto table = sideband_table(1.0, t1.drive, 6);
    info("power in orders {0, +-2} = %.4f (published claim 0.995, ledgered)", table.zero_and_second_power());
}

void criterion2() {
    const auto c = preset("fig5");
    const auto chain = build_transmit_chain(c, false);
    const auto lin = measure_chirp_linearity(chain.order_baseband, 0.9, c.drive.optical_bandwidth());
    verdict(2, lin.relative_deviation < 1e-3,
            fmt("isolating drive f0 = %.3g Hz: ", c.drive.offset_frequency) +
                fmt("rms frequency deviation %.3e of 2B (limit 1e-3)", lin.relative_deviation));
    info("fitted chirp rate %.6e Hz/s (nominal %.6e)", lin.chirp_rate, c.drive.optical_chirp_rate());

    const auto t1 = preset("table1");
    const auto g = make_grid(t1.transmit.modulation_sample_rate, t1.drive.pulse_width);
    const auto base = to_order_baseband(select_order(modulate(t1.drive, g), t1.drive, t1.transmit.guard_fraction), t1.drive);
    const auto lin1 = measure_chirp_linearity(base, 0.9, t1.drive.optical_bandwidth());
    info("Table-1 drive f0 = %.3g Hz (orders 1 and 3 enter the passband): rms deviation %.3e of 2B",
         t1.drive.offset_frequency, lin1.relative_deviation);
}

void criterion3() {
    const auto t1 = preset("table1");
    const auto& f = t1.feasibility;
    const auto r = filter_feasibility(f.delta_lambda, f.lambda1, f.lambda2, t1.drive, 40e9);
    const double hand = 299792458.0 * 0.2e-9 / (1550e-9 * 1550e-9);
    const double rel = std::abs(r.delta_f0 / hand - 1.0);
    const double rel_printed = std::abs(r.delta_f0 / 24.97e9 - 1.0);
    verdict(3, rel < 1e-3 && rel_printed < 1e-3 && r.feasible,
            fmt("filter spacing %.5e Hz", r.delta_f0) + fmt(" (vs 24.97 GHz: %.1e rel)", rel_printed) +
                fmt(", required interval %.4e Hz, 40 GHz modulator ", r.required_interval) +
                (r.feasible ? "feasible" : "infeasible"));
    info("published spacing 26 GHz differs by %.1f %% (ledgered)", 100.0 * (26e9 / r.delta_f0 - 1.0));
}

void criterion4() {
    const auto g = make_grid(1e6, 1e-3);
    const double fb = 37e3;
    const auto s = tone(g, fb);
    ComplexEnvelope w(g);
    for (auto& v : w.samples) v = 1.0;
    const auto iq = detect(JonesField::diagonal(s), JonesField::horizontal_only(w), BenchParams{});
    cplx ai = 0.0, aq = 0.0;
    for (std::size_t i = 0; i < g.num_samples; ++i) {
        const cplx ph = std::polar(1.0, -kTwoPi * fb * g.time(i));
        ai += iq.i_samples[i] * ph;
        aq += iq.q_samples[i] * ph;
    }
    const double offset = std::arg(aq / ai);
    ComplexEnvelope b(g);
    for (std::size_t i = 0; i < g.num_samples; ++i) b.samples[i] = {iq.i_samples[i], iq.q_samples[i]};
    const Spectrum sp = spectrum(b);
    const double image_db = 10.0 * std::log10(sp.band_energy(-fb - 1e3, -fb + 1e3) / (sp.band_energy(fb - 1e3, fb + 1e3) + 1e-300));

    const auto sig = JonesField::diagonal(random_envelope(g, 1));
    const auto ref = JonesField::horizontal_only(random_envelope(g, 2));
    double out = 0.0;
    for (const auto& f : propagate(sig, ref, BenchParams{})) out += f.energy();
    const double energy_err = std::abs(out / (sig.energy() + ref.energy()) - 1.0);
    verdict(4, std::abs(offset - 0.5 * kPi) < 1e-6 && image_db > 60.0 && energy_err < 1e-9,
            fmt("I/Q offset error %.2e rad (limit 1e-6)", std::abs(offset - 0.5 * kPi)) +
                fmt(", image rejection %.1f dB (limit 60)", image_db) + fmt(", energy error %.2e (limit 1e-9)", energy_err));
}

void criterion5() {
    const double gamma = 2e14, tp = 50e-6;
    const auto tx = chirp(25e9, tp, gamma);
    DechirpConfig cfg;
    cfg.gamma = gamma;
    cfg.f_center = test_carrier();
    cfg.decimation = 5000;
    const auto beat = receive_beat(tx, bench_geometry(), {PointTarget{0.0, 0.75, {1.0, 0.0}}}, cfg.f_center, cfg);
    const Spectrum s = spectrum(beat);
    const double f = s.freqs[peak_bin(s)];
    const double expected = 2.0 * gamma * 0.75 / kSpeedOfLight;
    verdict(5, std::abs(f - expected) <= 0.5 * s.resolution_bw && std::abs(expected / 1e6 - 1.0) < 1e-3,
            fmt("beat peak %.6e Hz", f) + fmt(", closed form %.6e Hz", expected) + fmt(", bin %.3g Hz", s.resolution_bw));
}

const ImagePeak* nearest(const std::vector<ImagePeak>& peaks, const PointTarget& t) {
    const ImagePeak* best = nullptr;
    double d_best = HUGE_VAL;
    for (const auto& p : peaks) {
        const double d = std::hypot(p.azimuth - t.azimuth_position, p.range - t.range_offset);
        if (d < d_best) d_best = d, best = &p;
    }
    return d_best < 5e-3 ? best : nullptr;
}

void criterion6() {
    const auto t0 = Clock::now();
    const auto c = preset("fig5");
    const auto tx = build_transmit_chain(c, true).tx;
    const auto res = run_imaging(tx, c);
    info("fig5 imaging at full scale: %zu pulses x %zu samples in %.1f s", res.range_compressed.image.rows,
         tx.size(), seconds_since(t0));
    const auto peaks = find_peaks(res.image, 6);
    const auto& tg = c.targets;
    const ImagePeak* p1 = nearest(peaks, tg[0]);
    const ImagePeak* p2 = nearest(peaks, tg[1]);
    const ImagePeak* p3 = nearest(peaks, tg[2]);
    if (!p1 || !p2 || !p3) {
        verdict(6, false, "not all three targets were found as separate peaks");
        return;
    }
    for (const auto* p : {p1, p2, p3})
        info("peak at azimuth %+.4f m, range %+.4f m, %.2f dB, widths az %.4f m rg %.4f m", p->azimuth, p->range,
             p->amplitude_db, p->width_azimuth, p->width_range);
    const double dip_range = dip_between(res.image, *p1, *p2);
    const double dip_az = dip_between(res.image, *p1, *p3);
    const double range_width = p3->width_range;
    const double az_width = p2->width_azimuth;
    const double az_theory = theoretical_azimuth_width(c);
    const bool ok = dip_range >= 3.0 && dip_az >= 3.0 && range_width <= 0.016 && std::abs(az_width / az_theory - 1.0) <= 0.1;
    verdict(6, ok,
            fmt("(a) range dip %.1f dB (>= 3)", dip_range) + fmt(", (b) azimuth dip %.1f dB (>= 3)", dip_az) +
                fmt(", (c) range width %.4f m (<= 0.016)", range_width) +
                fmt(", azimuth width %.5f m", az_width) + fmt(" vs theory %.5f m (within 10%%)", az_theory));
    info("Table-1 resolution figure 0.015 m in both axes; range theory %.4f m, azimuth theory %.4f m",
         theoretical_range_width(c), az_theory);
    info("max range migration %.3e m, K_a %.4e Hz/s", res.max_range_migration, res.azimuth_rate);
}

void criterion7() {
    const auto t1 = preset("table1");
    const auto r = data_reduction_report(1.0, t1.drive);
    verdict(7, r.orders_saved >= 3.5,
            fmt("a = 1 m: dechirped bandwidth %.4e Hz", r.dechirped_bandwidth) +
                fmt(", sampling %.4e Hz", r.required_sampling) + fmt(", %.2f orders saved (>= 3.5)", r.orders_saved));
    info("published: 6.67 MHz dechirped bandwidth and four orders of magnitude (ledgered)");
}

void criterion8() {
    const auto t0 = Clock::now();
    const PropertyResult results[] = {parseval_property(1),           bandpass_idempotence_property(2),
                                      delay_composition_property(3),  hwp_involution_property(4),
                                      rvp_invariance_property(5),     image_linearity_property(100.0),
                                      determinism_property(100.0, 6)};
    const double elapsed = seconds_since(t0);
    bool ok = elapsed < 60.0;
    std::string detail;
    for (const auto& r : results) {
        ok = ok && r.ok;
        info("property %s: %s (metric %.3e, limit %.1e)", r.name.c_str(), r.ok ? "holds" : "violated", r.metric, r.limit);
        if (!r.ok) detail += r.name + " violated; ";
    }
    verdict(8, ok, detail + fmt("7 property suites at scale 100 in %.1f s (limit 60 s)", elapsed));
}

}  // namespace

int main() {
    run_guarded(1, criterion1);
    run_guarded(2, criterion2);
    run_guarded(3, criterion3);
    run_guarded(4, criterion4);
    run_guarded(5, criterion5);
    run_guarded(6, criterion6);
    run_guarded(7, criterion7);
    run_guarded(8, criterion8);
    for (const auto& e : build_ledger())
        info("ledger %s: published %.6g, computed %.6g %s", e.id.c_str(), e.published, e.computed, e.agrees ? "(agrees)" : "(differs)");
    return failures == 0 ? 0 : 1;
}
