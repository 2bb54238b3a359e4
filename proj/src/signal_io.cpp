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

#include "eosal/signal_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "eosal/error.hpp"

namespace eosal::io {
namespace {

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

std::filesystem::path sidecar_path(const std::filesystem::path& p) {
    auto s = p;
    s += ".json";
    return s;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

void write_rows(std::ofstream& out, const std::vector<double>& axis, const std::vector<cplx>& values) {
    out << "t_or_f,re,im\n";
    char line[96];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", axis[i], values[i].real(), values[i].imag());
        out << line;
    }
}

void write_interleaved(std::ofstream& out, const std::vector<cplx>& values) {
    // std::complex<double> is layout-compatible with double[2].
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(cplx)));
}

}  // namespace

void write_sidecar(const std::filesystem::path& data_path, const Sidecar& meta) {
    nlohmann::ordered_json j;
    j["domain"] = meta.domain;
    j["sample_rate"] = meta.sample_rate;
    j["t_start"] = meta.t_start;
    j["num_samples"] = meta.num_samples;
    j["units"] = meta.units;
    j["config_id"] = meta.config_id;
    auto out = open_out(sidecar_path(data_path), false);
    out << j.dump(2) << "\n";
}

Sidecar read_sidecar(const std::filesystem::path& data_path) {
    std::ifstream in(sidecar_path(data_path));
    if (!in) throw Error("missing sidecar for " + data_path.string());
    auto j = nlohmann::json::parse(in);
    Sidecar s;
    s.domain = j.at("domain").get<std::string>();
    s.sample_rate = j.at("sample_rate").get<double>();
    s.t_start = j.at("t_start").get<double>();
    s.num_samples = j.at("num_samples").get<std::size_t>();
    s.units = j.at("units").get<std::string>();
    s.config_id = j.value("config_id", "");
    return s;
}

void write_csv(const std::filesystem::path& path, const ComplexEnvelope& env, const std::string& config_id) {
    auto out = open_out(path, false);
    write_rows(out, env.grid.times(), env.samples);
    write_sidecar(path, {"time", env.grid.sample_rate, env.grid.t_start, env.size(), "s; field amplitude", config_id});
}

void write_csv(const std::filesystem::path& path, const Spectrum& spec, const std::string& config_id) {
    auto out = open_out(path, false);
    write_rows(out, spec.freqs, spec.values);
    const double f0 = spec.freqs.empty() ? 0.0 : spec.freqs.front();
    write_sidecar(path, {"frequency", spec.resolution_bw, f0, spec.values.size(), "Hz; amplitude*s", config_id});
}

void write_binary(const std::filesystem::path& path, const ComplexEnvelope& env, const std::string& config_id) {
    auto out = open_out(path, true);
    write_interleaved(out, env.samples);
    write_sidecar(path, {"time", env.grid.sample_rate, env.grid.t_start, env.size(), "s; field amplitude", config_id});
}

void write_binary(const std::filesystem::path& path, const Spectrum& spec, const std::string& config_id) {
    auto out = open_out(path, true);
    write_interleaved(out, spec.values);
    const double f0 = spec.freqs.empty() ? 0.0 : spec.freqs.front();
    write_sidecar(path, {"frequency", spec.resolution_bw, f0, spec.values.size(), "Hz; amplitude*s", config_id});
}

ComplexEnvelope read_binary_envelope(const std::filesystem::path& path) {
    const Sidecar meta = read_sidecar(path);
    if (meta.domain != "time") throw Error(path.string() + " is not a time-domain dump");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    TimeGrid g{meta.sample_rate, meta.num_samples, meta.t_start};
    std::vector<cplx> s(meta.num_samples);
    in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(cplx)));
    if (in.gcount() != static_cast<std::streamsize>(s.size() * sizeof(cplx))) throw Error("truncated dump " + path.string());
    return ComplexEnvelope(g, std::move(s));
}

}  // namespace eosal::io
