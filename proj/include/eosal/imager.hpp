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

#include <optional>
#include <span>
#include <vector>

#include "eosal/eom.hpp"
#include "eosal/jones.hpp"
#include "eosal/scene.hpp"
#include "eosal/signal.hpp"
#include "eosal/window.hpp"

namespace eosal {

struct DechirpConfig {
    double gamma = 2e14;  // Hz/s, optical chirp rate q·K
    double f_center = 0.0;  // Hz, f_c + q·f0
    std::size_t decimation = 1;
    bool rvp_correction = true;
    bool rcmc = true;
    WindowKind range_window = WindowKind::rect;
    WindowKind azimuth_window = WindowKind::rect;
    std::size_t range_oversample = 8;
    std::size_t azimuth_oversample = 4;
    double range_half_extent = 0.0;  // m kept either side of the scene centre; 0 keeps all
    double azimuth_half_extent = 0.0;  // m; 0 keeps all
    double max_decimation_loss = 0.01;
    void validate() const;
};

/// Complex image rows indexed by azimuth (or pulse), columns by range.
struct ComplexImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;  // row-major

    ComplexImage() = default;
    ComplexImage(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    cplx& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<cplx> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const cplx> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Range-compressed pulses. range_axis holds R_Δ = c·f/(2γ), relative to R_ref.
struct RangeDopplerMatrix {
    ComplexImage image;
    std::vector<double> slow_time;  // s, one per row
    std::vector<double> range_axis;  // m, one per column
    double reference_range = 0.0;  // m
    double gamma = 0.0;
    double beat_sample_rate = 0.0;  // Hz, before zero padding
    double beat_t_start = 0.0;  // s
    std::size_t beat_samples = 0;
};

struct ImagePeak {
    std::size_t row = 0;
    std::size_t col = 0;
    double azimuth = 0.0;  // m, interpolated
    double range = 0.0;  // m, interpolated
    double amplitude = 0.0;
    double amplitude_db = 0.0;  // relative to the strongest peak
    double width_azimuth = 0.0;  // m, -3 dB; NaN when not measurable
    double width_range = 0.0;
};

/// Focused image. Range axis is the offset from the standoff range R.
struct SalImage {
    ComplexImage image;
    std::vector<double> azimuth_axis;  // m
    std::vector<double> range_axis;  // m
    std::vector<ImagePeak> peaks;
};

/// b = I + jQ, decimated. Throws NotRepresentable when decimation would discard more
/// than cfg.max_decimation_loss of the beat energy.
ComplexEnvelope assemble_beat(const IQStream& iq, const DechirpConfig& cfg);

/// Multiplies the beat spectrum at f by exp(+jπf²/γ), cancelling the residual video
/// phase −πγΔ² of b = w·conj(s). Identity when cfg.rvp_correction is false.
ComplexEnvelope rvp_correct(const ComplexEnvelope& b, const DechirpConfig& cfg);

/// Windowed, zero-padded fast-time spectra, one row per pulse.
RangeDopplerMatrix range_compress(std::span<const ComplexEnvelope> beats, std::span<const double> slow_time,
                                  double reference_range, const DechirpConfig& cfg);

/// Per-pulse shift by sqrt(R0² + (v·t_m)²) − R0 with R0 = the standoff range, applied as a
/// linear phase ramp in the fast-time domain.
RangeDopplerMatrix rcmc(const RangeDopplerMatrix& mat, const SceneGeometry& g);

/// Largest |ΔR(t_m)| rcmc would apply, m.
double max_range_migration(const SceneGeometry& g, std::span<const double> slow_time);

/// Azimuth rate 2v²/(λR0) with λ = c/f_center.
double azimuth_fm_rate(const SceneGeometry& g, double f_center);

/// Correlates every range column with exp(jπK_a t²) over the synthetic aperture and
/// crops to the configured extents. Peaks are not filled in.
SalImage azimuth_compress(const RangeDopplerMatrix& mat, const SceneGeometry& g, const DechirpConfig& cfg);

enum class ImageAxis { range, azimuth };

/// -3 dB width of a sampled magnitude profile around index `peak`, in units of `spacing`.
/// The peak height comes from a parabola through the three top samples, the crossings from
/// linear interpolation. Throws MeasurementError when a crossing is missing.
double mainlobe_width(std::span<const double> magnitude, std::size_t peak, double spacing);

/// -3 dB width along one axis through the strongest pixel (or the given pixel). Throws
/// MeasurementError when the image has no peak clearly above its median.
double measure_resolution(const SalImage& img, ImageAxis axis,
                          std::optional<std::pair<std::size_t, std::size_t>> at = std::nullopt);

/// Local maxima within `dynamic_range_db` of the strongest, strongest first.
std::vector<ImagePeak> find_peaks(const SalImage& img, std::size_t max_peaks, double dynamic_range_db = 20.0);

/// Depth of the dip on the straight line between two pixels, in dB below the weaker one.
double dip_between(const SalImage& img, const ImagePeak& a, const ImagePeak& b);

struct DataReductionReport {
    double scene_extent = 0.0;  // a, m
    double ratio = 0.0;  // a/(c·Tp)
    double dechirped_bandwidth = 0.0;  // Δf_a, Hz
    double required_sampling = 0.0;  // Δf_s = 2Δf_a, Hz
    double optical_bandwidth = 0.0;  // B_opt, Hz
    double orders_saved = 0.0;  // log10(B_opt/Δf_s)
};

DataReductionReport data_reduction_report(double scene_extent, const ChirpDriveParams& p);

}  // namespace eosal
