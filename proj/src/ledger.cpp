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

#include "eosal/ledger.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "eosal/config.hpp"
#include "eosal/eom.hpp"
#include "eosal/imager.hpp"
#include "eosal/jones.hpp"
#include "eosal/pipeline.hpp"

#ifndef EOSAL_DATA_DIR
#define EOSAL_DATA_DIR "data"
#endif

namespace eosal {
namespace {

struct Computed {
    double value = 0.0;
    std::string note;
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::map<std::string, std::function<Computed()>> evaluators() {
    const ExperimentConfig t1 = preset("table1");
    std::map<std::string, std::function<Computed()>> m;

    m["power_share_even"] = [] {
        const auto table = sideband_table(1.0, ChirpDriveParams{}, 12);
        return Computed{table.zero_and_second_power(),
                        "orders |n| <= 2 together hold " + num(table.power_within(2)) + "; odd orders hold " +
                            num(table.odd_power())};
    };
    m["filter_spacing"] = [t1] {
        const auto& f = t1.feasibility;
        const auto r = filter_feasibility(f.delta_lambda, f.lambda1, f.lambda2, t1.drive, f.modulator_bandwidth);
        return Computed{r.delta_f0, "direct arithmetic with c = 299792458 m/s"};
    };
    m["required_interval"] = [t1] {
        const auto& f = t1.feasibility;
        const auto r = filter_feasibility(f.delta_lambda, f.lambda1, f.lambda2, t1.drive, f.modulator_bandwidth);
        return Computed{r.required_interval, std::string("a 40 GHz modulator is ") + (r.feasible ? "feasible" : "infeasible")};
    };
    m["dechirped_bandwidth"] = [t1] {
        const auto r = data_reduction_report(1.0, t1.drive);
        return Computed{r.dechirped_bandwidth, "2*a*B_opt/(c*Tp) with B_opt = " + num(r.optical_bandwidth) + " Hz"};
    };
    m["swath_ratio"] = [t1] {
        const auto r = data_reduction_report(1.0, t1.drive);
        return Computed{r.ratio, "a/(c*Tp) evaluated literally"};
    };
    m["orders_saved"] = [t1] {
        const auto r = data_reduction_report(1.0, t1.drive);
        return Computed{r.orders_saved, "log10(B_opt / (2*df_a)) with df_s = " + num(r.required_sampling) + " Hz"};
    };
    m["hwp_angle"] = [] {
        const double h = std::sqrt(0.5);
        const JonesMatrix printed{h, h, h, -h};
        const double theta = 0.5 * std::atan2(printed.b.real(), printed.a.real());
        return Computed{theta, "angle reproducing the printed entries; max entry error " +
                                   num(hwp(theta).max_abs_diff(printed)) + "; hwp(pi/4) is [[0,1],[1,0]]"};
    };
    m["qwp_intermediate"] = [] {
        const JonesMatrix q = qwp(0.25 * kPi, false);
        return Computed{std::abs(q.a), "(1,1) entry of the quarter-wave matrix at eta = pi/4 is 1 - j*cos(pi/2) = 1"};
    };
    m["order_offset"] = [] {
        const ExperimentConfig c = apply_scale(preset("fig5"), 100.0);
        const auto chain = build_transmit_chain(c, false);
        const auto lin = measure_chirp_linearity(chain.filtered, 0.9, c.drive.optical_bandwidth());
        return Computed{lin.center_frequency / c.drive.offset_frequency,
                        "measured centre of the filtered +2 order over f0 (scaled drive)"};
    };
    m["optical_bandwidth"] = [t1] {
        return Computed{t1.drive.optical_bandwidth(), "q*B with q = 2 and B = " + num(t1.drive.bandwidth()) + " Hz"};
    };
    m["range_resolution"] = [t1] {
        return Computed{kSpeedOfLight / (2.0 * t1.drive.optical_bandwidth()),
                        "c/(2*B_opt); the -3 dB sinc width is " + num(theoretical_range_width(t1)) + " m"};
    };
    m["azimuth_resolution"] = [t1] {
        const auto& g = t1.geometry;
        const double lambda_r_2l = g.wavelength * g.standoff_range / (2.0 * g.footprint());
        return Computed{theoretical_azimuth_width(t1),
                        "0.886*v/(K_a*T_a); lambda*R/(2*L_sa) = " + num(lambda_r_2l) + " m"};
    };
    return m;
}

}  // namespace

std::filesystem::path data_directory() {
    if (const char* env = std::getenv("EOSAL_DATA_DIR"); env && *env) return env;
    return EOSAL_DATA_DIR;
}

std::vector<LedgerEntry> build_ledger() { return build_ledger(data_directory() / "published_claims.json"); }

std::vector<LedgerEntry> build_ledger(const std::filesystem::path& claims_file) {
    std::ifstream in(claims_file);
    if (!in) throw Error("ledger: cannot open " + claims_file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("ledger: bad claims file: ") + e.what());
    }
    const auto eval = evaluators();
    std::vector<LedgerEntry> out;
    for (const auto& c : j.at("claims")) {
        LedgerEntry e;
        e.id = c.at("id").get<std::string>();
        e.citation = c.at("citation").get<std::string>();
        e.claim = c.at("claim").get<std::string>();
        e.units = c.at("units").get<std::string>();
        e.published = c.at("published").get<double>();
        auto it = eval.find(e.id);
        if (it == eval.end()) throw Error("ledger: no evaluator for claim '" + e.id + "'");
        const Computed v = it->second();
        e.computed = v.value;
        e.note = v.note;
        e.agrees = std::abs(e.computed / e.published - 1.0) <= 0.01;
        out.push_back(std::move(e));
    }
    return out;
}

std::string format_ledger(const std::vector<LedgerEntry>& entries) {
    std::ostringstream s;
    s << "Discrepancy ledger: " << entries.size() << " entries\n";
    int i = 1;
    for (const auto& e : entries) {
        s << "\n[" << i++ << "] " << e.id << " (" << e.citation << ")\n";
        s << "    claim:     " << e.claim << "\n";
        s << "    published: " << num(e.published) << " " << e.units << "\n";
        s << "    computed:  " << num(e.computed) << " " << e.units << "\n";
        s << "    status:    " << (e.agrees ? "agrees" : "differs") << " ("
          << num(100.0 * (e.computed / e.published - 1.0)) << " %)\n";
        s << "    note:      " << e.note << "\n";
    }
    return s.str();
}

std::string ledger_to_json(const std::vector<LedgerEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries)
        arr.push_back({{"id", e.id},
                       {"citation", e.citation},
                       {"claim", e.claim},
                       {"units", e.units},
                       {"published", e.published},
                       {"computed", e.computed},
                       {"agrees", e.agrees},
                       {"note", e.note}});
    return arr.dump(2) + "\n";
}

}  // namespace eosal
