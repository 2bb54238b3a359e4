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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eosal/eom.hpp"
#include "eosal/error.hpp"
#include "eosal/imager.hpp"
#include "eosal/jones.hpp"
#include "eosal/laser.hpp"
#include "eosal/scene.hpp"

namespace eosal {

/// Base for every configuration problem; the CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};
/// The text is not valid JSON.
class ConfigParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};
/// Unknown key, wrong type, or a value outside its allowed range.
class ConfigSchemaError : public ConfigError {
public:
    using ConfigError::ConfigError;
};
/// Individually valid values that cannot be simulated together.
class ConfigValueError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

struct TransmitConfig {
    double modulation_sample_rate = 50e9;  // Hz
    ModulatorModel model = ModulatorModel::phase;
    double guard_fraction = 0.2;
    double filter_edge = 0.0;  // Hz, raised-cosine edge width; 0 is a brick wall
    double edfa_gain = 1.0;
    double receiver_sample_rate = 50e9;  // Hz
};

struct FeasibilityConfig {
    double delta_lambda = 0.2e-9;  // m
    double lambda1 = 1550e-9;  // m
    double lambda2 = 1550e-9;  // m
    double modulator_bandwidth = 40e9;  // Hz
};

struct DechirpSettings {
    double beat_sample_rate = 5e6;  // Hz
    bool rvp_correction = true;
    bool rcmc = true;
    WindowKind range_window = WindowKind::rect;
    WindowKind azimuth_window = WindowKind::rect;
    std::size_t range_oversample = 8;
    std::size_t azimuth_oversample = 4;
    double range_half_extent = 0.25;  // m
    double azimuth_half_extent = 0.25;  // m
};

struct OutputsConfig {
    bool sidebands = false;
    bool modulated_spectrum = false;
    bool filtered_spectrum = false;
    bool intrusions = false;
    bool linearity = false;
    bool feasibility = false;
    bool image = false;
    bool reduction = false;
    bool spectrum_binary = false;  // full-resolution float64 dump next to the coarse CSV
    std::size_t spectrum_csv_points = 4096;
    int max_order = 6;
    double scene_extent = 1.0;  // m
};

struct ExperimentConfig {
    std::string preset = "custom";
    std::uint64_t seed = 0;
    double scale = 1.0;
    LaserParams laser;
    ChirpDriveParams drive;
    TransmitConfig transmit;
    FeasibilityConfig feasibility;
    BenchParams bench;
    SceneGeometry geometry;
    std::vector<PointTarget> targets;
    DechirpSettings dechirp;
    OutputsConfig outputs;

    /// Receiver samples per beat sample. Throws ConfigValueError if not an integer.
    std::size_t decimation() const;
    /// Modulation samples per receiver sample. Throws ConfigValueError if not an integer.
    std::size_t transmit_decimation() const;
    /// Carrier of the selected order, f_c + q·f0.
    double order_carrier() const;
    DechirpConfig dechirp_config() const;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);

/// Divides f0, K, and the modulation and receiver sample rates by `factor`, and widens the
/// range crop by the same factor. The beat sample rate is kept.
ExperimentConfig apply_scale(const ExperimentConfig& cfg, double factor);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Cross-field checks; throws ConfigValueError.
void validate_physics(const ExperimentConfig& cfg);

}  // namespace eosal
