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

#include "eosal/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace eosal {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr double kSqrtHalf = 0.70710678118654752440;

// Walks one JSON object, type-checks each key it is asked for and remembers which keys
// were consumed so the rest can be reported as unknown.
class Block {
public:
    Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigSchemaError("config: '" + where() + "' must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    void number(const std::string& key, double& out, double lo = -HUGE_VAL, bool lo_open = false) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_number()) fail(key, "must be a number");
        const double x = v->get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
        if (lo_open ? !(x > lo) : !(x >= lo)) fail(key, lo_open ? "must be greater than " + fmt(lo) : "must be at least " + fmt(lo));
        out = x;
    }

    void positive(const std::string& key, double& out) { number(key, out, 0.0, true); }
    void non_negative(const std::string& key, double& out) { number(key, out, 0.0, false); }

    template <class Int>
    void integer(const std::string& key, Int& out, long long lo) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_number_integer()) fail(key, "must be an integer");
        const long long x = v->get<long long>();
        if (x < lo) fail(key, "must be at least " + std::to_string(lo));
        out = static_cast<Int>(x);
    }

    void boolean(const std::string& key, bool& out) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_boolean()) fail(key, "must be true or false");
        out = v->get<bool>();
    }

    std::optional<std::string> string(const std::string& key) {
        const json* v = take(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) fail(key, "must be a string");
        return v->get<std::string>();
    }

    const json* raw(const std::string& key) { return take(key); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigSchemaError("config: key '" + where(key) + "' " + what);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key())) throw ConfigSchemaError("config: unknown key '" + where(it.key()) + "'");
    }

    std::string where(const std::string& key = "") const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    const json* take(const std::string& key) {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }
    static std::string fmt(double x) {
        std::ostringstream s;
        s << x;
        return s.str();
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

ExperimentConfig table1_preset() {
    ExperimentConfig c;
    c.preset = "table1";
    c.laser.center_frequency = kSpeedOfLight / 1550e-9;
    c.drive = ChirpDriveParams{};  // m = 1, K = 1e14, f0 = 7.5 GHz, Tp = 50 us, q = 2
    c.geometry = SceneGeometry{};  // 1550 nm, 0.1 mrad, 10 km, 50 m/s, 20 kHz
    c.targets = {{0.0, 0.0, {1.0, 0.0}}, {0.0, 0.03, {1.0, 0.0}}, {0.02, 0.0, {1.0, 0.0}}};
    c.outputs.sidebands = true;
    c.outputs.feasibility = true;
    c.outputs.linearity = true;
    c.outputs.intrusions = true;
    c.outputs.reduction = true;
    return c;
}

void read_laser(Block b, LaserParams& p) {
    b.non_negative("center_frequency_hz", p.center_frequency);
    b.non_negative("jitter_amplitude_hz", p.jitter_amplitude);
    b.non_negative("jitter_frequency_hz", p.jitter_frequency);
    b.non_negative("random_frequency_std_hz", p.random_frequency_std);
    b.non_negative("random_phase_std_rad", p.random_phase_std);
    b.finish();
}

void read_drive(Block b, ChirpDriveParams& p) {
    b.positive("modulation_index", p.modulation_index);
    b.positive("chirp_rate_hz_per_s", p.chirp_rate);
    b.non_negative("offset_frequency_hz", p.offset_frequency);
    b.positive("pulse_width_s", p.pulse_width);
    b.integer("order", p.order, -1000);
    if (p.order == 0) b.fail("order", "must be non-zero");
    b.finish();
}

void read_transmit(Block b, TransmitConfig& t) {
    b.positive("modulation_sample_rate_hz", t.modulation_sample_rate);
    if (auto s = b.string("modulator_model")) {
        auto m = parse_modulator_model(*s);
        if (!m) b.fail("modulator_model", "must be 'phase' or 'even_order'");
        t.model = *m;
    }
    b.non_negative("guard_fraction", t.guard_fraction);
    b.non_negative("filter_edge_hz", t.filter_edge);
    b.positive("edfa_gain", t.edfa_gain);
    b.positive("receiver_sample_rate_hz", t.receiver_sample_rate);
    b.finish();
}

void read_feasibility(Block b, FeasibilityConfig& f) {
    b.positive("delta_lambda_m", f.delta_lambda);
    b.positive("lambda1_m", f.lambda1);
    b.positive("lambda2_m", f.lambda2);
    b.positive("modulator_bandwidth_hz", f.modulator_bandwidth);
    b.finish();
}

void read_bench(Block b, BenchParams& p) {
    b.number("sigma", p.sigma, 0.0);
    if (!(p.sigma < 1.0)) b.fail("sigma", "must be below 1");
    if (!b.has("t_amp")) p.t_amp = kSqrtHalf * (1.0 - p.sigma);
    if (!b.has("r_amp")) p.r_amp = kSqrtHalf * (1.0 - p.sigma);
    b.positive("t_amp", p.t_amp);
    b.positive("r_amp", p.r_amp);
    if (p.t_amp > 1.0) b.fail("t_amp", "must not exceed 1");
    if (p.r_amp > 1.0) b.fail("r_amp", "must not exceed 1");
    b.number("phi_t_rad", p.phi_t);
    b.number("phi_r_rad", p.phi_r);
    b.number("eta_rad", p.eta);
    b.number("theta1_rad", p.theta1);
    b.number("theta2_rad", p.theta2);
    b.boolean("normalized", p.normalized);
    b.finish();
}

void read_geometry(Block b, SceneGeometry& g) {
    b.positive("wavelength_m", g.wavelength);
    b.positive("divergence_rad", g.divergence);
    b.positive("standoff_range_m", g.standoff_range);
    b.positive("platform_speed_mps", g.platform_speed);
    b.positive("prf_hz", g.prf);
    if (const json* r = b.raw("reference_range_m")) {
        if (r->is_null()) {
            g.reference_range.reset();
        } else {
            if (!r->is_number()) b.fail("reference_range_m", "must be a number or null");
            const double v = r->get<double>();
            if (!(v >= 0.0) || !std::isfinite(v)) b.fail("reference_range_m", "must be at least 0");
            g.reference_range = v;
        }
    }
    if (auto s = b.string("beam")) {
        auto shape = parse_beam_shape(*s);
        if (!shape) b.fail("beam", "must be 'uniform' or 'gaussian'");
        g.beam = *shape;
    }
    b.boolean("splitter_99_1", g.splitter_99_1);
    b.finish();
}

std::vector<PointTarget> read_targets(const json& arr) {
    if (!arr.is_array()) throw ConfigSchemaError("config: key 'targets' must be an array");
    std::vector<PointTarget> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        Block b(arr[i], "targets[" + std::to_string(i) + "]");
        PointTarget t;
        double re = 1.0, im = 0.0;
        b.number("azimuth_m", t.azimuth_position);
        b.number("range_offset_m", t.range_offset);
        b.number("reflectivity_re", re);
        b.number("reflectivity_im", im);
        b.finish();
        t.reflectivity = {re, im};
        out.push_back(t);
    }
    return out;
}

WindowKind read_window(Block& b, const std::string& key, WindowKind current) {
    auto s = b.string(key);
    if (!s) return current;
    auto w = parse_window(*s);
    if (!w) b.fail(key, "must be 'rect', 'hann' or 'taylor'");
    return *w;
}

void read_dechirp(Block b, DechirpSettings& d) {
    b.positive("beat_sample_rate_hz", d.beat_sample_rate);
    b.boolean("rvp_correction", d.rvp_correction);
    b.boolean("rcmc", d.rcmc);
    d.range_window = read_window(b, "range_window", d.range_window);
    d.azimuth_window = read_window(b, "azimuth_window", d.azimuth_window);
    b.integer("range_oversample", d.range_oversample, 1);
    b.integer("azimuth_oversample", d.azimuth_oversample, 1);
    b.non_negative("range_half_extent_m", d.range_half_extent);
    b.non_negative("azimuth_half_extent_m", d.azimuth_half_extent);
    b.finish();
}

void read_outputs(Block b, OutputsConfig& o) {
    b.boolean("sidebands", o.sidebands);
    b.boolean("modulated_spectrum", o.modulated_spectrum);
    b.boolean("filtered_spectrum", o.filtered_spectrum);
    b.boolean("intrusions", o.intrusions);
    b.boolean("linearity", o.linearity);
    b.boolean("feasibility", o.feasibility);
    b.boolean("image", o.image);
    b.boolean("reduction", o.reduction);
    b.boolean("spectrum_binary", o.spectrum_binary);
    b.integer("spectrum_csv_points", o.spectrum_csv_points, 2);
    b.integer("max_order", o.max_order, 2);
    if (o.max_order > 50) b.fail("max_order", "must not exceed 50");
    b.positive("scene_extent_m", o.scene_extent);
    b.finish();
}

bool near_integer(double x, std::size_t& n) {
    const double r = std::round(x);
    if (r < 1.0 || std::abs(x - r) > 1e-9 * r) return false;
    n = static_cast<std::size_t>(r);
    return true;
}

}  // namespace

std::size_t ExperimentConfig::decimation() const {
    std::size_t n = 0;
    if (!near_integer(transmit.receiver_sample_rate / dechirp.beat_sample_rate, n))
        throw ConfigValueError("config: transmit.receiver_sample_rate_hz must be an integer multiple of "
                               "dechirp.beat_sample_rate_hz");
    return n;
}

std::size_t ExperimentConfig::transmit_decimation() const {
    std::size_t n = 0;
    if (!near_integer(transmit.modulation_sample_rate / transmit.receiver_sample_rate, n))
        throw ConfigValueError("config: transmit.modulation_sample_rate_hz must be an integer multiple of "
                               "transmit.receiver_sample_rate_hz");
    return n;
}

double ExperimentConfig::order_carrier() const { return laser.center_frequency + drive.optical_offset(); }

DechirpConfig ExperimentConfig::dechirp_config() const {
    DechirpConfig d;
    d.gamma = drive.optical_chirp_rate();
    d.f_center = order_carrier();
    d.decimation = decimation();
    d.rvp_correction = dechirp.rvp_correction;
    d.rcmc = dechirp.rcmc;
    d.range_window = dechirp.range_window;
    d.azimuth_window = dechirp.azimuth_window;
    d.range_oversample = dechirp.range_oversample;
    d.azimuth_oversample = dechirp.azimuth_oversample;
    d.range_half_extent = dechirp.range_half_extent;
    d.azimuth_half_extent = dechirp.azimuth_half_extent;
    return d;
}

std::vector<std::string> preset_names() { return {"table1", "fig2", "fig4", "fig5"}; }

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c = table1_preset();
    if (name == "table1") return c;
    c.preset = name;
    c.outputs = OutputsConfig{};
    if (name == "fig2") {
        // Wide enough to show orders up to |n| = 5 around the carrier.
        c.transmit.modulation_sample_rate = 100e9;
        c.transmit.receiver_sample_rate = 50e9;
        c.outputs.sidebands = true;
        c.outputs.modulated_spectrum = true;
        return c;
    }
    if (name == "fig4") {
        c.outputs.filtered_spectrum = true;
        c.outputs.linearity = true;
        c.outputs.intrusions = true;
        return c;
    }
    if (name == "fig5") {
        // Offset chosen so no other order reaches the +2 passband; see README.
        c.drive.offset_frequency = 15e9;
        c.transmit.modulation_sample_rate = 150e9;
        c.transmit.receiver_sample_rate = 50e9;
        c.outputs.image = true;
        c.outputs.linearity = true;
        c.outputs.intrusions = true;
        c.outputs.reduction = true;
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig apply_scale(const ExperimentConfig& cfg, double factor) {
    if (!(factor >= 1.0) || !std::isfinite(factor)) throw ConfigSchemaError("config: scale must be >= 1");
    ExperimentConfig c = cfg;
    c.scale = cfg.scale * factor;
    c.drive.offset_frequency /= factor;
    c.drive.chirp_rate /= factor;
    c.transmit.modulation_sample_rate /= factor;
    c.transmit.receiver_sample_rate /= factor;
    c.transmit.filter_edge /= factor;
    c.dechirp.range_half_extent *= factor;
    return c;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(std::string("config: parse error: ") + e.what());
    }
    Block root(j, "");
    ExperimentConfig c;
    if (auto name = root.string("preset")) {
        bool known = false;
        for (const auto& p : preset_names()) known = known || p == *name;
        if (known) c = preset(*name);
        else {
            c = table1_preset();
            c.preset = *name;
        }
    } else {
        c = table1_preset();
        c.preset = "custom";
    }
    root.integer("seed", c.seed, 0);
    root.number("scale", c.scale, 1.0);
    if (const json* v = root.raw("laser")) read_laser(Block(*v, "laser"), c.laser);
    if (const json* v = root.raw("drive")) read_drive(Block(*v, "drive"), c.drive);
    if (const json* v = root.raw("transmit")) read_transmit(Block(*v, "transmit"), c.transmit);
    if (const json* v = root.raw("feasibility")) read_feasibility(Block(*v, "feasibility"), c.feasibility);
    if (const json* v = root.raw("bench")) read_bench(Block(*v, "bench"), c.bench);
    if (const json* v = root.raw("geometry")) read_geometry(Block(*v, "geometry"), c.geometry);
    if (const json* v = root.raw("targets")) c.targets = read_targets(*v);
    if (const json* v = root.raw("dechirp")) read_dechirp(Block(*v, "dechirp"), c.dechirp);
    if (const json* v = root.raw("outputs")) read_outputs(Block(*v, "outputs"), c.outputs);
    root.finish();
    c.laser.seed = c.seed;
    c.drive.prf = c.geometry.prf;
    validate_physics(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    ojson j;
    j["preset"] = c.preset;
    j["seed"] = c.seed;
    j["scale"] = c.scale;
    j["laser"] = {{"center_frequency_hz", c.laser.center_frequency},
                  {"jitter_amplitude_hz", c.laser.jitter_amplitude},
                  {"jitter_frequency_hz", c.laser.jitter_frequency},
                  {"random_frequency_std_hz", c.laser.random_frequency_std},
                  {"random_phase_std_rad", c.laser.random_phase_std}};
    j["drive"] = {{"modulation_index", c.drive.modulation_index},
                  {"chirp_rate_hz_per_s", c.drive.chirp_rate},
                  {"offset_frequency_hz", c.drive.offset_frequency},
                  {"pulse_width_s", c.drive.pulse_width},
                  {"order", c.drive.order}};
    j["transmit"] = {{"modulation_sample_rate_hz", c.transmit.modulation_sample_rate},
                     {"modulator_model", std::string(to_string(c.transmit.model))},
                     {"guard_fraction", c.transmit.guard_fraction},
                     {"filter_edge_hz", c.transmit.filter_edge},
                     {"edfa_gain", c.transmit.edfa_gain},
                     {"receiver_sample_rate_hz", c.transmit.receiver_sample_rate}};
    j["feasibility"] = {{"delta_lambda_m", c.feasibility.delta_lambda},
                        {"lambda1_m", c.feasibility.lambda1},
                        {"lambda2_m", c.feasibility.lambda2},
                        {"modulator_bandwidth_hz", c.feasibility.modulator_bandwidth}};
    j["bench"] = {{"sigma", c.bench.sigma},         {"t_amp", c.bench.t_amp},
                  {"r_amp", c.bench.r_amp},         {"phi_t_rad", c.bench.phi_t},
                  {"phi_r_rad", c.bench.phi_r},     {"eta_rad", c.bench.eta},
                  {"theta1_rad", c.bench.theta1},   {"theta2_rad", c.bench.theta2},
                  {"normalized", c.bench.normalized}};
    ojson geo = {{"wavelength_m", c.geometry.wavelength},
                 {"divergence_rad", c.geometry.divergence},
                 {"standoff_range_m", c.geometry.standoff_range},
                 {"platform_speed_mps", c.geometry.platform_speed},
                 {"prf_hz", c.geometry.prf}};
    geo["reference_range_m"] = c.geometry.reference_range ? ojson(*c.geometry.reference_range) : ojson(nullptr);
    geo["beam"] = std::string(to_string(c.geometry.beam));
    geo["splitter_99_1"] = c.geometry.splitter_99_1;
    j["geometry"] = geo;
    ojson targets = ojson::array();
    for (const auto& t : c.targets)
        targets.push_back({{"azimuth_m", t.azimuth_position},
                           {"range_offset_m", t.range_offset},
                           {"reflectivity_re", t.reflectivity.real()},
                           {"reflectivity_im", t.reflectivity.imag()}});
    j["targets"] = targets;
    j["dechirp"] = {{"beat_sample_rate_hz", c.dechirp.beat_sample_rate},
                    {"rvp_correction", c.dechirp.rvp_correction},
                    {"rcmc", c.dechirp.rcmc},
                    {"range_window", std::string(to_string(c.dechirp.range_window))},
                    {"azimuth_window", std::string(to_string(c.dechirp.azimuth_window))},
                    {"range_oversample", c.dechirp.range_oversample},
                    {"azimuth_oversample", c.dechirp.azimuth_oversample},
                    {"range_half_extent_m", c.dechirp.range_half_extent},
                    {"azimuth_half_extent_m", c.dechirp.azimuth_half_extent}};
    j["outputs"] = {{"sidebands", c.outputs.sidebands},
                    {"modulated_spectrum", c.outputs.modulated_spectrum},
                    {"filtered_spectrum", c.outputs.filtered_spectrum},
                    {"intrusions", c.outputs.intrusions},
                    {"linearity", c.outputs.linearity},
                    {"feasibility", c.outputs.feasibility},
                    {"image", c.outputs.image},
                    {"reduction", c.outputs.reduction},
                    {"spectrum_binary", c.outputs.spectrum_binary},
                    {"spectrum_csv_points", c.outputs.spectrum_csv_points},
                    {"max_order", c.outputs.max_order},
                    {"scene_extent_m", c.outputs.scene_extent}};
    return j.dump(2) + "\n";
}

void validate_physics(const ExperimentConfig& c) {
    const bool transmit_used = c.outputs.modulated_spectrum || c.outputs.filtered_spectrum || c.outputs.linearity ||
                               c.outputs.image || c.outputs.sidebands;
    if (c.transmit.modulation_sample_rate * c.drive.pulse_width < 16.0)
        throw ConfigValueError("config: fewer than 16 modulation samples per pulse");
    if (transmit_used && (c.outputs.filtered_spectrum || c.outputs.linearity || c.outputs.image)) {
        const auto [lo, hi] = order_passband(c.drive, c.transmit.guard_fraction);
        const double nyq = 0.5 * c.transmit.modulation_sample_rate;
        if (lo < -nyq || hi > nyq)
            throw ConfigValueError("config: the order-" + std::to_string(c.drive.order) + " passband [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) +
                                   "] Hz does not fit transmit.modulation_sample_rate_hz");
    }
    if (c.outputs.image) {
        const std::size_t td = c.transmit_decimation();
        (void)td;
        c.decimation();
        const double half_band = 0.5 * c.drive.optical_bandwidth() + c.transmit.guard_fraction * c.drive.bandwidth();
        if (half_band > 0.5 * c.transmit.receiver_sample_rate)
            throw ConfigValueError("config: the selected order does not fit transmit.receiver_sample_rate_hz");
        if (c.targets.empty()) throw ConfigValueError("config: image output needs at least one target");
        double far = 0.0;
        for (const auto& t : c.targets)
            far = std::max(far, std::abs(c.geometry.standoff_range + t.range_offset - c.geometry.ref_range()));
        const double beat = 2.0 * c.drive.optical_chirp_rate() * far / kSpeedOfLight;
        if (beat > 0.5 * c.dechirp.beat_sample_rate)
            throw ConfigValueError("config: a target's beat frequency exceeds dechirp.beat_sample_rate_hz / 2");
        if (c.geometry.pulse_count() < 2) throw ConfigValueError("config: synthetic aperture holds fewer than 2 pulses");
    }
}

}  // namespace eosal
