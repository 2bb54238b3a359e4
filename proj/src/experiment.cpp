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

#include "eosal/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eosal/imager.hpp"
#include "eosal/pipeline.hpp"
#include "eosal/signal_io.hpp"

namespace eosal {
namespace fs = std::filesystem;
namespace {

using ojson = nlohmann::ordered_json;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

// Tracks every file written so a failed run can be undone.
class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

    fs::path claim(const std::string& name, bool with_sidecar = false) {
        names_.push_back(name);
        if (with_sidecar) names_.push_back(name + ".json");
        return dir_ / name;
    }

    void text(const std::string& name, const std::string& content) {
        std::ofstream out(claim(name), std::ios::binary);
        if (!out) throw Error("cannot write " + (dir_ / name).string());
        out << content;
        if (!out) throw Error("write failed for " + (dir_ / name).string());
    }

    void binary_f32(const std::string& name, const std::vector<float>& data) {
        std::ofstream out(claim(name), std::ios::binary);
        if (!out) throw Error("cannot write " + (dir_ / name).string());
        // float32 little-endian; the build targets little-endian hosts only.
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(float)));
    }

    void rollback() noexcept {
        std::error_code ec;
        for (const auto& n : names_) fs::remove(dir_ / n, ec);
        fs::remove(dir_ / "manifest.json", ec);
    }

    std::vector<ArtifactRecord> records() const {
        std::vector<ArtifactRecord> out;
        for (const auto& n : names_) {
            const fs::path p = dir_ / n;
            out.push_back({n, sha256_file(p), fs::file_size(p)});
        }
        return out;
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::string> names_;
};

template <class Fn>
void stage(const char* name, std::ostream* log, Fn&& fn) {
    if (log) *log << "[eosal] " << name << "\n" << std::flush;
    try {
        fn();
    } catch (const StageError&) {
        throw;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::string coarse_spectrum_csv(const ComplexEnvelope& env, std::size_t points) {
    const Spectrum spec = spectrum(env);
    const double total = spec.energy();
    const std::size_t n = spec.values.size();
    points = std::min(points, n);
    std::ostringstream s;
    s << "freq_hz,power_fraction\n";
    for (std::size_t p = 0; p < points; ++p) {
        const std::size_t a = p * n / points, b = (p + 1) * n / points;
        double e = 0.0;
        for (std::size_t i = a; i < b; ++i) e += std::norm(spec.values[i]);
        const double f = 0.5 * (spec.freqs[a] + spec.freqs[b - 1]);
        s << num(f) << "," << num(total > 0 ? e * spec.resolution_bw / total : 0.0) << "\n";
    }
    return s.str();
}

void image_artifacts(Artifacts& art, const std::string& stem, const ComplexImage& im, const std::vector<double>& row_axis,
                     const std::string& row_name, const std::vector<double>& col_axis, const std::string& config_id,
                     const std::vector<std::size_t>* col_subset = nullptr) {
    const std::size_t cols = col_subset ? col_subset->size() : im.cols;
    std::vector<float> mag;
    mag.reserve(im.rows * cols);
    for (std::size_t r = 0; r < im.rows; ++r)
        for (std::size_t j = 0; j < cols; ++j) mag.push_back(static_cast<float>(std::abs(im.at(r, col_subset ? (*col_subset)[j] : j))));
    art.binary_f32(stem + ".f32", mag);
    ojson meta;
    meta["format"] = "float32 little-endian magnitude, row-major";
    meta["rows"] = im.rows;
    meta["cols"] = cols;
    meta["row_axis"] = {{"name", row_name}, {"units", row_name == "slow_time" ? "s" : "m"},
                        {"start", row_axis.empty() ? 0.0 : row_axis.front()},
                        {"step", row_axis.size() > 1 ? row_axis[1] - row_axis[0] : 0.0}};
    std::vector<double> cols_used;
    for (std::size_t j = 0; j < cols; ++j) cols_used.push_back(col_axis[col_subset ? (*col_subset)[j] : j]);
    meta["col_axis"] = {{"name", "range"}, {"units", "m"},
                        {"start", cols_used.empty() ? 0.0 : cols_used.front()},
                        {"step", cols_used.size() > 1 ? cols_used[1] - cols_used[0] : 0.0}};
    meta["config_id"] = config_id;
    art.text(stem + ".f32.json", meta.dump(2) + "\n");
}

// Peaks nearest the configured targets, in target order.
std::vector<const ImagePeak*> match_targets(const SalImage& img, const ExperimentConfig& cfg) {
    std::vector<const ImagePeak*> out;
    for (const auto& t : cfg.targets) {
        const ImagePeak* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& p : img.peaks) {
            const double d = std::hypot(p.azimuth - t.azimuth_position, p.range - t.range_offset);
            if (d < best_d) best_d = d, best = &p;
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace

fs::path resolve_out_dir(const fs::path& fallback) {
    if (const char* env = std::getenv("EOSAL_OUT_DIR"); env && *env) return env;
    return fallback;
}

RunManifest run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw StageError("setup", "cannot create " + opt.out_dir.string() + ": " + ec.message());

    const std::string cfg_text = serialize_config(cfg);
    RunManifest manifest;
    manifest.tool_version = tool_version();
    manifest.preset = cfg.preset;
    manifest.config_hash = sha256_hex(cfg_text);
    manifest.seed = cfg.seed;
    manifest.scale = cfg.scale;
    const std::string config_id = manifest.config_hash.substr(0, 16);

    Artifacts art(opt.out_dir);
    std::ostream* log = opt.log;
    ojson report;
    report["preset"] = cfg.preset;
    report["scale"] = cfg.scale;
    report["seed"] = cfg.seed;

    try {
        stage("config", log, [&] {
            validate_physics(cfg);
            art.text("config.json", cfg_text);
        });

        const ExperimentConfig& c = cfg;
        const bool need_chain = c.outputs.sidebands || c.outputs.modulated_spectrum || c.outputs.filtered_spectrum ||
                                c.outputs.linearity;
        TransmitChain chain;
        if (need_chain) stage("transmit", log, [&] { chain = build_transmit_chain(c, true); });

        if (c.outputs.sidebands) {
            stage("sidebands", log, [&] {
                const auto table = sideband_table(c.drive.modulation_index, c.drive, c.outputs.max_order);
                const int measurable = static_cast<int>(
                    std::floor(0.5 * c.transmit.modulation_sample_rate / c.drive.offset_frequency - 0.5));
                const int mmax = std::min(c.outputs.max_order, measurable);
                std::vector<BandPower> measured;
                if (mmax >= 0 && c.drive.offset_frequency > 0.0)
                    measured = measure_sideband_powers(chain.modulated, c.drive.offset_frequency, mmax);
                std::ostringstream csv;
                csv << "order,coefficient_re,coefficient_im,power_analytic,power_measured,occupied_width_hz,"
                       "center_offset_hz,chirp_rate_hz_per_s\n";
                ojson rows = ojson::array();
                for (const auto& sb : table.orders) {
                    const BandPower* bp = nullptr;
                    for (const auto& m : measured)
                        if (m.order == sb.order) bp = &m;
                    csv << sb.order << "," << num(sb.coefficient.real()) << "," << num(sb.coefficient.imag()) << ","
                        << num(sb.power_fraction) << "," << (bp ? num(bp->power_fraction) : "") << ","
                        << (bp ? num(bp->occupied_width) : "") << "," << num(sb.center_offset) << ","
                        << num(sb.chirp_rate) << "\n";
                    rows.push_back({{"order", sb.order},
                                    {"power_analytic", sb.power_fraction},
                                    {"power_measured", bp ? ojson(bp->power_fraction) : ojson(nullptr)},
                                    {"occupied_width_hz", bp ? ojson(bp->occupied_width) : ojson(nullptr)}});
                }
                art.text("sidebands.csv", csv.str());
                std::ostringstream txt;
                txt << "Sideband table, m = " << num(c.drive.modulation_index) << "\n"
                    << "  power in orders |n| <= 2 : " << num(table.power_within(2)) << "\n"
                    << "  power in orders {0, +-2} : " << num(table.zero_and_second_power()) << "\n"
                    << "  power in odd orders      : " << num(table.odd_power()) << "\n"
                    << "  measured orders          : |n| <= " << mmax << " (regions of width f0 around n*f0)\n";
                art.text("sidebands.txt", txt.str());
                report["sidebands"] = {{"power_within_2", table.power_within(2)},
                                       {"power_zero_and_second", table.zero_and_second_power()},
                                       {"power_odd", table.odd_power()},
                                       {"orders", rows}};
            });
        }

        if (c.outputs.modulated_spectrum) {
            stage("spectrum", log, [&] {
                art.text("modulated_spectrum.csv", coarse_spectrum_csv(chain.modulated, c.outputs.spectrum_csv_points));
                if (c.outputs.spectrum_binary) {
                    const auto p = art.claim("modulated_spectrum.bin", true);
                    io::write_binary(p, spectrum(chain.modulated), config_id);
                }
            });
        }

        if (c.outputs.filtered_spectrum) {
            stage("filter", log, [&] {
                art.text("filtered_spectrum.csv", coarse_spectrum_csv(chain.filtered, c.outputs.spectrum_csv_points));
                if (c.outputs.spectrum_binary) {
                    const auto p = art.claim("filtered_spectrum.bin", true);
                    io::write_binary(p, spectrum(chain.filtered), config_id);
                }
                const auto [lo, hi] = order_passband(c.drive, c.transmit.guard_fraction);
                const Spectrum s = spectrum(chain.filtered);
                report["filtered"] = {{"passband_lo_hz", lo},
                                      {"passband_hi_hz", hi},
                                      {"energy_fraction_of_input", s.energy() / chain.modulated.energy()}};
            });
        }

        if (c.outputs.intrusions) {
            stage("intrusions", log, [&] {
                const auto list = order_intrusions(c.drive, c.transmit.modulation_sample_rate, c.transmit.guard_fraction,
                                                   c.transmit.model);
                std::ostringstream csv;
                csv << "order,overlap_lo_hz,overlap_hi_hz,power_fraction,aliased\n";
                double total = 0.0;
                for (const auto& o : list) {
                    csv << o.order << "," << num(o.overlap_lo) << "," << num(o.overlap_hi) << ","
                        << num(o.power_fraction) << "," << (o.aliased ? "true" : "false") << "\n";
                    total += o.power_fraction;
                }
                art.text("intrusions.csv", csv.str());
                report["intrusions"] = {{"count", list.size()},
                                        {"power_fraction_total", total},
                                        {"minimum_isolating_offset_hz",
                                         minimum_isolating_offset(c.drive, c.transmit.guard_fraction)}};
            });
        }

        if (c.outputs.linearity) {
            stage("linearity", log, [&] {
                const auto lin = measure_chirp_linearity(chain.order_baseband, 0.9, c.drive.optical_bandwidth());
                const double q = std::abs(static_cast<double>(c.drive.order));
                const double amp = std::sqrt(chain.filtered.mean_power());
                ojson j = {{"chirp_rate_hz_per_s", lin.chirp_rate},
                           {"expected_chirp_rate_hz_per_s", c.drive.optical_chirp_rate()},
                           {"center_frequency_hz", lin.center_frequency + c.drive.optical_offset()},
                           {"expected_center_frequency_hz", c.drive.optical_offset()},
                           {"rms_deviation_hz", lin.rms_deviation},
                           {"relative_deviation", lin.relative_deviation},
                           {"within_0p1_percent", lin.relative_deviation < 1e-3},
                           {"rms_amplitude", amp},
                           {"order", c.drive.order},
                           {"optical_bandwidth_hz", q * c.drive.bandwidth()}};
                art.text("linearity.json", j.dump(2) + "\n");
                report["linearity"] = j;
            });
        }

        if (c.outputs.feasibility) {
            stage("feasibility", log, [&] {
                const auto& f = c.feasibility;
                const auto r = filter_feasibility(f.delta_lambda, f.lambda1, f.lambda2, c.drive, f.modulator_bandwidth);
                std::ostringstream txt;
                txt << "Filter feasibility\n"
                    << "  filter spacing c*dl/(l1*l2) : " << num(r.delta_f0) << " Hz\n"
                    << "  required interval           : " << num(r.required_interval) << " Hz\n"
                    << "  modulator bandwidth         : " << num(r.modulator_bandwidth) << " Hz\n"
                    << "  verdict                     : " << (r.feasible ? "feasible" : "infeasible") << "\n"
                    << "  separation 2*f0 + K*Tp      : " << num(r.separation_interval) << " Hz ("
                    << (r.separation_ok ? "spacing fits" : "spacing exceeds it") << ")\n";
                art.text("feasibility.txt", txt.str());
                std::ostringstream csv;
                csv << "delta_f0_hz,required_interval_hz,modulator_bandwidth_hz,feasible,separation_interval_hz,"
                       "separation_ok\n"
                    << num(r.delta_f0) << "," << num(r.required_interval) << "," << num(r.modulator_bandwidth) << ","
                    << (r.feasible ? "true" : "false") << "," << num(r.separation_interval) << ","
                    << (r.separation_ok ? "true" : "false") << "\n";
                art.text("feasibility.csv", csv.str());
                report["feasibility"] = {{"delta_f0_hz", r.delta_f0},
                                         {"required_interval_hz", r.required_interval},
                                         {"feasible", r.feasible}};
            });
        }

        if (c.outputs.image) {
            ImagingResult img;
            stage("imaging", log, [&] {
                const auto tx_chain = build_transmit_chain(c, false);
                img = run_imaging(tx_chain.tx, c, opt.threads);
            });
            stage("emit", log, [&] {
                const auto& rc = img.range_compressed;
                std::vector<std::size_t> keep;
                const double shift = rc.reference_range - c.geometry.standoff_range;
                std::vector<double> rc_axis;
                for (std::size_t k = 0; k < rc.range_axis.size(); ++k) {
                    rc_axis.push_back(shift + rc.range_axis[k]);
                    if (c.dechirp.range_half_extent == 0.0 || std::abs(rc_axis.back()) <= c.dechirp.range_half_extent)
                        keep.push_back(k);
                }
                image_artifacts(art, "range_compressed", rc.image, rc.slow_time, "slow_time", rc_axis, config_id, &keep);
                image_artifacts(art, "range_rcmc", img.range_doppler.image, rc.slow_time, "slow_time", rc_axis,
                                config_id, &keep);
                image_artifacts(art, "image", img.image.image, img.image.azimuth_axis, "azimuth",
                                img.image.range_axis, config_id);

                std::ostringstream peaks;
                peaks << "azimuth_m,range_m,amplitude_dB,width_az_m,width_rg_m\n";
                for (const auto& p : img.image.peaks)
                    peaks << num(p.azimuth) << "," << num(p.range) << "," << num(p.amplitude_db) << ","
                          << num(p.width_azimuth) << "," << num(p.width_range) << "\n";
                art.text("peaks.csv", peaks.str());

                const auto matched = match_targets(img.image, c);
                std::ostringstream txt;
                txt << "Imaging resolution report\n"
                    << "  pulses                     : " << img.range_doppler.image.rows << "\n"
                    << "  azimuth FM rate K_a        : " << num(img.azimuth_rate) << " Hz/s\n"
                    << "  max range migration        : " << num(img.max_range_migration) << " m\n"
                    << "  theoretical range width    : " << num(theoretical_range_width(c)) << " m (rect, -3 dB)\n"
                    << "  theoretical azimuth width  : " << num(theoretical_azimuth_width(c)) << " m (rect, -3 dB)\n"
                    << "  Table 1 resolution (both)  : 0.015 m\n";
                ojson targets = ojson::array();
                for (std::size_t i = 0; i < matched.size(); ++i) {
                    const ImagePeak* p = matched[i];
                    if (!p) continue;
                    txt << "  target " << i + 1 << ": peak at (" << num(p->azimuth) << ", " << num(p->range)
                        << ") m, widths az " << num(p->width_azimuth) << " m, rg " << num(p->width_range) << " m\n";
                    targets.push_back({{"azimuth_m", p->azimuth},
                                       {"range_m", p->range},
                                       {"width_azimuth_m", p->width_azimuth},
                                       {"width_range_m", p->width_range},
                                       {"amplitude_db", p->amplitude_db}});
                }
                ojson dips = ojson::array();
                for (std::size_t i = 0; i < matched.size(); ++i)
                    for (std::size_t k = i + 1; k < matched.size(); ++k) {
                        if (!matched[i] || !matched[k] || matched[i] == matched[k]) continue;
                        const double d = dip_between(img.image, *matched[i], *matched[k]);
                        txt << "  dip between targets " << i + 1 << " and " << k + 1 << ": " << num(d) << " dB\n";
                        dips.push_back({{"a", i + 1}, {"b", k + 1}, {"dip_db", d}});
                    }
                art.text("resolution.txt", txt.str());
                report["image"] = {{"pulses", img.range_doppler.image.rows},
                                   {"azimuth_rate_hz_per_s", img.azimuth_rate},
                                   {"max_range_migration_m", img.max_range_migration},
                                   {"theoretical_range_width_m", theoretical_range_width(c)},
                                   {"theoretical_azimuth_width_m", theoretical_azimuth_width(c)},
                                   {"targets", targets},
                                   {"dips", dips}};
            });
        }

        if (c.outputs.reduction) {
            stage("reduction", log, [&] {
                const auto r = data_reduction_report(c.outputs.scene_extent, c.drive);
                std::ostringstream txt;
                txt << "Data-rate reduction\n"
                    << "  scene extent a          : " << num(r.scene_extent) << " m\n"
                    << "  ratio a/(c*Tp)          : " << num(r.ratio) << "\n"
                    << "  optical bandwidth       : " << num(r.optical_bandwidth) << " Hz\n"
                    << "  dechirped bandwidth     : " << num(r.dechirped_bandwidth) << " Hz\n"
                    << "  required sampling       : " << num(r.required_sampling) << " Hz\n"
                    << "  orders of magnitude     : " << num(r.orders_saved) << "\n";
                art.text("reduction.txt", txt.str());
                std::ostringstream csv;
                csv << "scene_extent_m,ratio,optical_bandwidth_hz,dechirped_bandwidth_hz,required_sampling_hz,"
                       "orders_saved\n"
                    << num(r.scene_extent) << "," << num(r.ratio) << "," << num(r.optical_bandwidth) << ","
                    << num(r.dechirped_bandwidth) << "," << num(r.required_sampling) << "," << num(r.orders_saved)
                    << "\n";
                art.text("reduction.csv", csv.str());
                report["reduction"] = {{"dechirped_bandwidth_hz", r.dechirped_bandwidth},
                                       {"required_sampling_hz", r.required_sampling},
                                       {"orders_saved", r.orders_saved}};
            });
        }

        stage("emit", log, [&] {
            art.text("report.json", report.dump(2) + "\n");
            manifest.artifacts = art.records();
            manifest.wall_clock_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_manifest(opt.out_dir / "manifest.json", manifest);
        });
    } catch (...) {
        art.rollback();
        throw;
    }
    return manifest;
}

}  // namespace eosal
