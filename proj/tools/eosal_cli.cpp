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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eosal/config.hpp"
#include "eosal/experiment.hpp"
#include "eosal/imager.hpp"
#include "eosal/ledger.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Source {
    std::string config_path;
    std::string preset_name;
    double scale = 1.0;
    std::optional<std::uint64_t> seed;
};

void add_source_options(CLI::App* cmd, Source& src, bool required) {
    auto* grp = cmd->add_option_group("source");
    grp->add_option("--config", src.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    grp->add_option("--preset", src.preset_name, "built-in preset: table1, fig2, fig4, fig5");
    if (required) grp->require_option(1);
    else grp->require_option(0, 1);
    cmd->add_option("--scale", src.scale, "divide frequencies and sample rates by N")->check(CLI::Range(1.0, 1e6));
    cmd->add_option("--seed", src.seed, "random seed override");
}

eosal::ExperimentConfig resolve(const Source& src) {
    eosal::ExperimentConfig cfg = !src.config_path.empty() ? eosal::load_config(src.config_path)
                                  : !src.preset_name.empty() ? eosal::preset(src.preset_name)
                                                             : eosal::preset("table1");
    if (src.seed) {
        cfg.seed = *src.seed;
        cfg.laser.seed = *src.seed;
    }
    if (src.scale != 1.0) cfg = eosal::apply_scale(cfg, src.scale);
    eosal::validate_physics(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eosal: electro-optic chirp synthetic aperture lidar simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", eosal::tool_version());

    Source sim_src;
    std::string out_dir;
    unsigned threads = 0;
    bool quiet = false;
    auto* sim = app.add_subcommand("simulate", "run an experiment and write its artifacts");
    add_source_options(sim, sim_src, true);
    sim->add_option("--out", out_dir, "output directory (default $EOSAL_OUT_DIR or ./eosal_out)");
    sim->add_option("--threads", threads, "worker threads, 0 = all cores");
    sim->add_flag("--quiet", quiet, "no progress lines");

    bool ledger_json = false;
    auto* led = app.add_subcommand("ledger", "print the discrepancy ledger with computed values");
    led->add_flag("--json", ledger_json, "JSON instead of text");

    Source red_src;
    double extent = 0.0;
    bool red_csv = false;
    auto* red = app.add_subcommand("report-reduction", "dechirp data-rate reduction for a scene extent");
    red->add_option("--scene-extent", extent, "scene depth a in metres")->required()->check(CLI::PositiveNumber);
    add_source_options(red, red_src, false);
    red->add_flag("--csv", red_csv, "CSV instead of text");

    Source dump_src;
    auto* dump = app.add_subcommand("dump-config", "print the resolved configuration as JSON");
    add_source_options(dump, dump_src, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sim) {
            const auto cfg = resolve(sim_src);
            eosal::RunOptions opt;
            opt.out_dir = out_dir.empty() ? eosal::resolve_out_dir("eosal_out") : std::filesystem::path(out_dir);
            opt.threads = threads;
            opt.log = quiet ? nullptr : &std::cerr;
            const auto m = eosal::run_experiment(cfg, opt);
            std::cout << "wrote " << m.artifacts.size() << " artifacts to " << opt.out_dir.string()
                      << " (config " << m.config_hash.substr(0, 12) << ", " << m.wall_clock_seconds << " s)\n";
        } else if (*led) {
            const auto entries = eosal::build_ledger();
            std::cout << (ledger_json ? eosal::ledger_to_json(entries) : eosal::format_ledger(entries));
        } else if (*red) {
            const auto cfg = resolve(red_src);
            const auto r = eosal::data_reduction_report(extent, cfg.drive);
            if (red_csv) {
                std::cout << "scene_extent_m,ratio,optical_bandwidth_hz,dechirped_bandwidth_hz,required_sampling_hz,"
                             "orders_saved\n"
                          << r.scene_extent << "," << r.ratio << "," << r.optical_bandwidth << ","
                          << r.dechirped_bandwidth << "," << r.required_sampling << "," << r.orders_saved << "\n";
            } else {
                std::cout << "scene extent a        : " << r.scene_extent << " m\n"
                          << "ratio a/(c*Tp)        : " << r.ratio << "\n"
                          << "optical bandwidth     : " << r.optical_bandwidth << " Hz\n"
                          << "dechirped bandwidth   : " << r.dechirped_bandwidth << " Hz\n"
                          << "required sampling     : " << r.required_sampling << " Hz\n"
                          << "orders of magnitude   : " << r.orders_saved << "\n";
            }
        } else if (*dump) {
            std::cout << eosal::serialize_config(resolve(dump_src));
        }
    } catch (const eosal::ConfigError& e) {
        std::cerr << "eosal: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "eosal: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
