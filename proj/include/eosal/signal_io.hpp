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

#include <filesystem>
#include <string>

#include "eosal/signal.hpp"

namespace eosal::io {

/// Metadata written next to every numeric dump as <file>.json.
struct Sidecar {
    std::string domain;  // "time" or "frequency"
    double sample_rate = 0.0;  // Hz (time domain) or bin spacing in Hz (frequency domain)
    double t_start = 0.0;
    std::size_t num_samples = 0;
    std::string units;
    std::string config_id;
};

void write_sidecar(const std::filesystem::path& data_path, const Sidecar& meta);
Sidecar read_sidecar(const std::filesystem::path& data_path);

/// CSV with header `t_or_f,re,im`.
void write_csv(const std::filesystem::path& path, const ComplexEnvelope& env, const std::string& config_id = "");
void write_csv(const std::filesystem::path& path, const Spectrum& spec, const std::string& config_id = "");

/// Little-endian float64, interleaved re/im.
void write_binary(const std::filesystem::path& path, const ComplexEnvelope& env, const std::string& config_id = "");
void write_binary(const std::filesystem::path& path, const Spectrum& spec, const std::string& config_id = "");
ComplexEnvelope read_binary_envelope(const std::filesystem::path& path);

}  // namespace eosal::io
