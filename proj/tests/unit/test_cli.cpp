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

// Drives the command-line tool as a subprocess.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eosal/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("eosal_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args, const std::string& env = "", const fs::path& cwd = fs::temp_directory_path()) {
    const fs::path dir = scratch("io");
    const std::string cmd = "cd '" + cwd.string() + "' && " + env + " '" + EOSAL_CLI_PATH + "' " + args + " > '" +
                            (dir / "out").string() + "' 2> '" + (dir / "err").string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir / "out");
    r.err = slurp(dir / "err");
    return r;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("simulate writes a manifest covering every artifact") {
    const auto out = scratch("fig5");
    const auto r = run("simulate --preset fig5 --scale 100 --quiet --out '" + out.string() + "'");
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto m = manifest(out);
    CHECK(m.at("preset") == "fig5");
    CHECK(m.at("scale") == 100.0);
    std::size_t listed = 0;
    for (const auto& a : m.at("artifacts")) {
        const fs::path p = out / a.at("path").get<std::string>();
        CHECK(fs::exists(p));
        CHECK(fs::file_size(p) == a.at("bytes").get<std::uintmax_t>());
        CHECK(a.at("sha256").get<std::string>().size() == 64);
        ++listed;
    }
    std::size_t on_disk = 0;
    for (const auto& e : fs::directory_iterator(out))
        if (e.path().filename() != "manifest.json") ++on_disk;
    CHECK(listed == on_disk);
    for (const char* name : {"image.f32", "image.f32.json", "peaks.csv", "resolution.txt", "config.json", "report.json"})
        CHECK_MESSAGE(fs::exists(out / name), name);
    const std::string peaks = slurp(out / "peaks.csv");
    CHECK(peaks.rfind("azimuth_m,range_m,amplitude_dB,width_az_m,width_rg_m", 0) == 0);
}

TEST_CASE("re-running the same config and seed reproduces checksums") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    const std::string base = "simulate --preset fig4 --scale 100 --seed 5 --quiet --out ";
    REQUIRE(run(base + "'" + a.string() + "'").code == 0);
    REQUIRE(run(base + "'" + b.string() + "'").code == 0);
    const auto ma = manifest(a), mb = manifest(b);
    REQUIRE(ma.at("artifacts").size() == mb.at("artifacts").size());
    for (std::size_t i = 0; i < ma.at("artifacts").size(); ++i)
        CHECK(ma.at("artifacts")[i].at("sha256") == mb.at("artifacts")[i].at("sha256"));
    CHECK(ma.at("config_hash") == mb.at("config_hash"));
}

TEST_CASE("output directory precedence") {
    const auto env_dir = scratch("env");
    const auto cwd = scratch("cwd");
    REQUIRE(run("simulate --preset fig2 --scale 100 --quiet", "EOSAL_OUT_DIR='" + env_dir.string() + "'", cwd).code == 0);
    CHECK(fs::exists(env_dir / "manifest.json"));
    REQUIRE(run("simulate --preset fig2 --scale 100 --quiet", "", cwd).code == 0);
    CHECK(fs::exists(cwd / "eosal_out" / "manifest.json"));
}

TEST_CASE("configuration problems exit with status 1") {
    const auto dir = scratch("cfg");
    {
        std::ofstream(dir / "bad.json") << R"({"drive": {"pulse_width_s": -5e-5}})";
        std::ofstream(dir / "unknown.json") << R"({"drive": {"bandwidth": 5e9}})";
        std::ofstream(dir / "broken.json") << "{";
    }
    const auto neg = run("simulate --quiet --config '" + (dir / "bad.json").string() + "' --out '" + dir.string() + "/o'");
    CHECK(neg.code == 1);
    CHECK(neg.err.find("drive.pulse_width_s") != std::string::npos);
    const auto unk = run("dump-config --config '" + (dir / "unknown.json").string() + "'");
    CHECK(unk.code == 1);
    CHECK(unk.err.find("drive.bandwidth") != std::string::npos);
    CHECK(run("dump-config --config '" + (dir / "broken.json").string() + "'").code == 1);
    CHECK(run("simulate --preset nosuch").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK_FALSE(fs::exists(dir / "o" / "manifest.json"));
}

TEST_CASE("runtime failures exit with status 2") {
    const auto dir = scratch("runtime");
    std::ofstream(dir / "occupied") << "a file, not a directory";
    CHECK(run("simulate --preset fig2 --scale 100 --quiet --out '" + (dir / "occupied").string() + "'").code == 2);
}

TEST_CASE("ledger and reduction subcommands") {
    const auto led = run("ledger");
    CHECK(led.code == 0);
    CHECK(led.out.find("filter_spacing") != std::string::npos);
    const auto js = run("ledger --json");
    CHECK(js.code == 0);
    CHECK(nlohmann::json::parse(js.out).size() >= 6);
    const auto red = run("report-reduction --scene-extent 1 --csv");
    CHECK(red.code == 0);
    CHECK(red.out.find("1.33") != std::string::npos);
    const auto dump = run("dump-config --preset table1");
    CHECK(dump.code == 0);
    CHECK(nlohmann::json::parse(dump.out).at("geometry").at("platform_speed_mps") == 50.0);
    const auto ver = run("--version");
    CHECK(ver.code == 0);
    CHECK(ver.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("a failing stage removes partial artifacts") {
    const auto out = scratch("rollback");
    auto cfg = eosal::apply_scale(eosal::preset("fig5"), 100.0);
    cfg.outputs.sidebands = true;
    // A reference offset with a tiny range window leaves no image columns, so imaging fails
    // after earlier stages have already written files.
    cfg.geometry.reference_range = cfg.geometry.standoff_range + 0.3;
    cfg.dechirp.range_half_extent = 1e-6;
    eosal::RunOptions opt;
    opt.out_dir = out;
    try {
        eosal::run_experiment(cfg, opt);
        FAIL("expected a stage error");
    } catch (const eosal::StageError& e) {
        CHECK(e.stage() == "imaging");
    }
    CHECK(fs::is_empty(out));
}
