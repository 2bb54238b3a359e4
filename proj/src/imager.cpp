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

#include "eosal/imager.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eosal/error.hpp"
#include "eosal/fft.hpp"
#include "eosal/parallel.hpp"

namespace eosal {
namespace {

long signed_index(std::size_t k, std::size_t n) {
    return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

// Phase factor exp(-j2π f t0) with the cycle count reduced first.
cplx time_origin_phase(double f, double t0) {
    const double cycles = f * t0;
    return std::polar(1.0, -kTwoPi * (cycles - std::floor(cycles)));
}

// Forward fast-time transform of one row in the spectrum() convention, shifted.
struct RangeTransform {
    std::size_t m = 0, padded = 0;
    double dt = 0.0, t_start = 0.0;
    std::vector<double> window;
    std::vector<cplx> correction;  // dt·exp(-j2π f t_start), indexed by shifted bin

    RangeTransform(std::size_t m_, std::size_t os, double rate, double t0, WindowKind kind)
        : m(m_), padded(m_ * os), dt(1.0 / rate), t_start(t0), window(make_window(kind, m_)), correction(padded) {
        const double df = rate / static_cast<double>(padded);
        const long half = static_cast<long>(padded / 2);
        for (std::size_t k = 0; k < padded; ++k)
            correction[k] = dt * time_origin_phase((static_cast<long>(k) - half) * df, t_start);
    }

    double freq(std::size_t k) const {
        return (static_cast<double>(k) - std::floor(static_cast<double>(padded) / 2.0)) / (dt * static_cast<double>(padded));
    }

    void forward_padded(std::vector<cplx>& buf) const {
        fft::forward(buf);
        fft::shift(buf);
        for (std::size_t k = 0; k < padded; ++k) buf[k] *= correction[k];
    }

    void inverse_padded(std::vector<cplx>& buf) const {
        for (std::size_t k = 0; k < padded; ++k) buf[k] /= correction[k];
        fft::inverse_shift(buf);
        fft::inverse(buf);
    }
};

double magnitude(const ComplexImage& img, std::size_t r, std::size_t c) { return std::abs(img.at(r, c)); }

double parabolic_offset(double ym, double y0, double yp) {
    const double den = ym - 2.0 * y0 + yp;
    if (den == 0.0) return 0.0;
    return std::clamp(0.5 * (ym - yp) / den, -0.5, 0.5);
}

double axis_at(const std::vector<double>& axis, double index) {
    if (axis.size() < 2) return axis.empty() ? 0.0 : axis[0];
    const double step = axis[1] - axis[0];
    return axis[0] + index * step;
}

}  // namespace

void DechirpConfig::validate() const {
    if (!(gamma > 0.0)) throw InvalidArgument("dechirp: gamma must be positive");
    if (decimation < 1) throw InvalidArgument("dechirp: decimation must be >= 1");
    if (range_oversample < 1 || azimuth_oversample < 1) throw InvalidArgument("dechirp: oversample factors must be >= 1");
    if (range_half_extent < 0.0 || azimuth_half_extent < 0.0) throw InvalidArgument("dechirp: extents must be >= 0");
    if (!(max_decimation_loss >= 0.0)) throw InvalidArgument("dechirp: max_decimation_loss must be >= 0");
}

ComplexEnvelope assemble_beat(const IQStream& iq, const DechirpConfig& cfg) {
    cfg.validate();
    if (iq.i_samples.size() != iq.q_samples.size() || iq.i_samples.size() != iq.grid.num_samples)
        throw GridMismatch("assemble_beat: I and Q lengths differ");
    ComplexEnvelope b(iq.grid);
    for (std::size_t i = 0; i < b.size(); ++i) b.samples[i] = {iq.i_samples[i], iq.q_samples[i]};
    double loss = 0.0;
    ComplexEnvelope out = decimate(b, cfg.decimation, loss);
    if (loss > cfg.max_decimation_loss)
        throw NotRepresentable("assemble_beat: decimation by " + std::to_string(cfg.decimation) + " discards " +
                               std::to_string(100.0 * loss) + " % of the beat energy");
    return out;
}

ComplexEnvelope rvp_correct(const ComplexEnvelope& b, const DechirpConfig& cfg) {
    cfg.validate();
    if (!cfg.rvp_correction) return b;
    const std::size_t n = b.size();
    std::vector<cplx> x = b.samples;
    fft::forward(x);
    const double df = b.grid.sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_index(k, n)) * df;
        const double half_cycles = 0.5 * f * f / cfg.gamma;
        x[k] *= std::polar(1.0, kTwoPi * (half_cycles - std::floor(half_cycles)));
    }
    fft::inverse(x);
    return ComplexEnvelope(b.grid, std::move(x));
}

RangeDopplerMatrix range_compress(std::span<const ComplexEnvelope> beats, std::span<const double> slow_time,
                                  double reference_range, const DechirpConfig& cfg) {
    cfg.validate();
    if (beats.empty()) throw InvalidArgument("range_compress: no pulses");
    if (beats.size() != slow_time.size()) throw InvalidArgument("range_compress: slow-time axis length mismatch");
    const TimeGrid& g = beats.front().grid;
    for (const auto& b : beats)
        if (!b.grid.matches(g) || b.size() != g.num_samples) throw GridMismatch("range_compress: beats on different grids");

    const RangeTransform tr(g.num_samples, cfg.range_oversample, g.sample_rate, g.t_start, cfg.range_window);
    RangeDopplerMatrix mat;
    mat.image = ComplexImage(beats.size(), tr.padded);
    mat.slow_time.assign(slow_time.begin(), slow_time.end());
    mat.reference_range = reference_range;
    mat.gamma = cfg.gamma;
    mat.beat_sample_rate = g.sample_rate;
    mat.beat_t_start = g.t_start;
    mat.beat_samples = g.num_samples;
    mat.range_axis.resize(tr.padded);
    for (std::size_t k = 0; k < tr.padded; ++k) mat.range_axis[k] = kSpeedOfLight * tr.freq(k) / (2.0 * cfg.gamma);

    parallel_for(beats.size(), [&](std::size_t p) {
        std::vector<cplx> buf(tr.padded);
        for (std::size_t i = 0; i < tr.m; ++i) buf[i] = beats[p].samples[i] * tr.window[i];
        tr.forward_padded(buf);
        std::copy(buf.begin(), buf.end(), mat.image.row(p).begin());
    });
    return mat;
}

double max_range_migration(const SceneGeometry& g, std::span<const double> slow_time) {
    double worst = 0.0;
    const double r0 = g.standoff_range;
    for (double t : slow_time) {
        const double x = g.platform_speed * t;
        // sqrt(r0² + x²) − r0 without cancellation.
        worst = std::max(worst, x * x / (std::sqrt(r0 * r0 + x * x) + r0));
    }
    return worst;
}

RangeDopplerMatrix rcmc(const RangeDopplerMatrix& mat, const SceneGeometry& g) {
    RangeDopplerMatrix out = mat;
    if (g.platform_speed == 0.0 || mat.image.rows == 0) return out;
    const std::size_t os = mat.image.cols / mat.beat_samples;
    if (os * mat.beat_samples != mat.image.cols) throw InvalidArgument("rcmc: matrix is not an integer zero-pad");
    const RangeTransform tr(mat.beat_samples, os, mat.beat_sample_rate, mat.beat_t_start, WindowKind::rect);
    const double r0 = g.standoff_range;

    parallel_for(mat.image.rows, [&](std::size_t p) {
        const double x = g.platform_speed * mat.slow_time[p];
        const double dr = x * x / (std::sqrt(r0 * r0 + x * x) + r0);
        if (dr == 0.0) return;
        const double df = 2.0 * mat.gamma * dr / kSpeedOfLight;
        auto row = out.image.row(p);
        std::vector<cplx> buf(row.begin(), row.end());
        tr.inverse_padded(buf);
        for (std::size_t n = 0; n < buf.size(); ++n) {
            const double t = tr.t_start + static_cast<double>(n) * tr.dt;
            buf[n] *= time_origin_phase(df, t);
        }
        tr.forward_padded(buf);
        std::copy(buf.begin(), buf.end(), row.begin());
    });
    return out;
}

double azimuth_fm_rate(const SceneGeometry& g, double f_center) {
    if (!(f_center > 0.0)) throw InvalidArgument("azimuth_fm_rate: f_center must be positive");
    const double lambda = kSpeedOfLight / f_center;
    return 2.0 * g.platform_speed * g.platform_speed / (lambda * g.standoff_range);
}

SalImage azimuth_compress(const RangeDopplerMatrix& mat, const SceneGeometry& g, const DechirpConfig& cfg) {
    cfg.validate();
    g.validate();
    const std::size_t n = mat.image.rows;
    if (n == 0) throw InvalidArgument("azimuth_compress: empty matrix");

    // Range columns to keep, as offsets from the standoff range.
    std::vector<std::size_t> cols;
    SalImage out;
    const double centre_shift = mat.reference_range - g.standoff_range;
    for (std::size_t c = 0; c < mat.image.cols; ++c) {
        const double r = centre_shift + mat.range_axis[c];
        if (cfg.range_half_extent > 0.0 && std::abs(r) > cfg.range_half_extent) continue;
        cols.push_back(c);
        out.range_axis.push_back(r);
    }
    if (cols.empty()) throw InvalidArgument("azimuth_compress: range extent selects no bins");

    const double ka = azimuth_fm_rate(g, cfg.f_center);
    const std::size_t len = next_fast_length(2 * n);
    const std::size_t os = cfg.azimuth_oversample;
    const std::size_t up = len * os;

    const auto win = make_window(cfg.azimuth_window, n);
    std::vector<cplx> h(len);
    for (std::size_t m = 0; m < n; ++m) {
        const double t = mat.slow_time[m];
        const double half_cycles = 0.5 * ka * t * t;
        h[m] = win[m] * std::polar(1.0, kTwoPi * (half_cycles - std::floor(half_cycles)));
    }
    fft::forward(h);

    // Output lags in units of 1/(prf·os), symmetric about zero.
    const double x_max = cfg.azimuth_half_extent > 0.0 ? cfg.azimuth_half_extent : 0.5 * g.footprint();
    const double step = g.platform_speed / (g.prf * static_cast<double>(os));
    const long max_lag = std::min(static_cast<long>(std::floor(x_max / step)), static_cast<long>((n - 1) * os));
    const std::size_t rows = static_cast<std::size_t>(2 * max_lag + 1);
    out.azimuth_axis.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) out.azimuth_axis[r] = static_cast<double>(static_cast<long>(r) - max_lag) * step;

    out.image = ComplexImage(rows, cols.size());
    const double scale = 1.0 / g.prf;
    parallel_for(cols.size(), [&](std::size_t j) {
        std::vector<cplx> a(len);
        for (std::size_t m = 0; m < n; ++m) a[m] = mat.image.at(m, cols[j]);
        fft::forward(a);
        std::vector<cplx> z(up);
        const std::size_t pos = (len + 1) / 2;
        for (std::size_t k = 0; k < len; ++k) {
            const cplx y = a[k] * std::conj(h[k]);
            if (k < pos) z[k] = y;
            else z[up - (len - k)] = y;
        }
        fft::inverse(z);
        for (std::size_t r = 0; r < rows; ++r) {
            const long lag = static_cast<long>(r) - max_lag;
            const std::size_t idx = static_cast<std::size_t>((lag + static_cast<long>(up)) % static_cast<long>(up));
            out.image.at(r, j) = z[idx] * (static_cast<double>(os) * scale);
        }
    });
    return out;
}

double mainlobe_width(std::span<const double> mag, std::size_t peak, double spacing) {
    if (peak == 0 || peak + 1 >= mag.size()) throw MeasurementError("width: peak at the edge of the profile");
    const double ym = mag[peak - 1], y0 = mag[peak], yp = mag[peak + 1];
    const double d = parabolic_offset(ym, y0, yp);
    const double height = y0 - 0.25 * (ym - yp) * d;
    const double level = height / std::sqrt(2.0);

    std::size_t i = peak;
    while (i > 0 && mag[i - 1] >= level) --i;
    if (i == 0) throw MeasurementError("width: no -3 dB crossing on the low side");
    const double left = static_cast<double>(i - 1) + (level - mag[i - 1]) / (mag[i] - mag[i - 1]);

    std::size_t k = peak;
    while (k + 1 < mag.size() && mag[k + 1] >= level) ++k;
    if (k + 1 >= mag.size()) throw MeasurementError("width: no -3 dB crossing on the high side");
    const double right = static_cast<double>(k) + (mag[k] - level) / (mag[k] - mag[k + 1]);
    return (right - left) * spacing;
}

double measure_resolution(const SalImage& img, ImageAxis axis, std::optional<std::pair<std::size_t, std::size_t>> at) {
    const ComplexImage& im = img.image;
    if (im.data.empty()) throw MeasurementError("resolution: empty image");
    std::size_t r0 = 0, c0 = 0;
    if (at) {
        std::tie(r0, c0) = *at;
        if (r0 >= im.rows || c0 >= im.cols) throw InvalidArgument("resolution: pixel outside image");
    } else {
        double best = -1.0;
        for (std::size_t r = 0; r < im.rows; ++r)
            for (std::size_t c = 0; c < im.cols; ++c)
                if (const double v = magnitude(im, r, c); v > best) best = v, r0 = r, c0 = c;
    }
    std::vector<double> all(im.data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = std::abs(im.data[i]);
    auto mid = all.begin() + static_cast<long>(all.size() / 2);
    std::nth_element(all.begin(), mid, all.end());
    const double peak = magnitude(im, r0, c0);
    if (!(peak > 0.0) || peak < 2.0 * *mid) throw MeasurementError("resolution: no peak above the image floor");

    std::vector<double> cut;
    if (axis == ImageAxis::range) {
        if (img.range_axis.size() < 2) throw MeasurementError("resolution: range axis too short");
        for (std::size_t c = 0; c < im.cols; ++c) cut.push_back(magnitude(im, r0, c));
        return mainlobe_width(cut, c0, img.range_axis[1] - img.range_axis[0]);
    }
    if (img.azimuth_axis.size() < 2) throw MeasurementError("resolution: azimuth axis too short");
    for (std::size_t r = 0; r < im.rows; ++r) cut.push_back(magnitude(im, r, c0));
    return mainlobe_width(cut, r0, img.azimuth_axis[1] - img.azimuth_axis[0]);
}

std::vector<ImagePeak> find_peaks(const SalImage& img, std::size_t max_peaks, double dynamic_range_db) {
    const ComplexImage& im = img.image;
    std::vector<ImagePeak> found;
    if (im.rows < 3 || im.cols < 3) return found;
    double strongest = 0.0;
    for (const auto& v : im.data) strongest = std::max(strongest, std::abs(v));
    if (strongest == 0.0) return found;
    const double floor_level = strongest * std::pow(10.0, -dynamic_range_db / 20.0);

    for (std::size_t r = 1; r + 1 < im.rows; ++r) {
        for (std::size_t c = 1; c + 1 < im.cols; ++c) {
            const double v = magnitude(im, r, c);
            if (v < floor_level) continue;
            bool is_max = true;
            for (int dr = -1; dr <= 1 && is_max; ++dr)
                for (int dc = -1; dc <= 1 && is_max; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const double u = magnitude(im, r + dr, c + dc);
                    // Ties go to the first pixel in scan order.
                    if (u > v || (u == v && (dr < 0 || (dr == 0 && dc < 0)))) is_max = false;
                }
            if (!is_max) continue;
            ImagePeak p;
            p.row = r;
            p.col = c;
            p.amplitude = v;
            found.push_back(p);
        }
    }
    std::sort(found.begin(), found.end(), [](const ImagePeak& a, const ImagePeak& b) { return a.amplitude > b.amplitude; });
    if (found.size() > max_peaks) found.resize(max_peaks);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& p : found) {
        const double da = parabolic_offset(magnitude(im, p.row - 1, p.col), p.amplitude, magnitude(im, p.row + 1, p.col));
        const double dr = parabolic_offset(magnitude(im, p.row, p.col - 1), p.amplitude, magnitude(im, p.row, p.col + 1));
        p.azimuth = axis_at(img.azimuth_axis, static_cast<double>(p.row) + da);
        p.range = axis_at(img.range_axis, static_cast<double>(p.col) + dr);
        p.amplitude_db = 20.0 * std::log10(p.amplitude / strongest);
        try {
            p.width_azimuth = measure_resolution(img, ImageAxis::azimuth, std::pair{p.row, p.col});
        } catch (const MeasurementError&) {
            p.width_azimuth = nan;
        }
        try {
            p.width_range = measure_resolution(img, ImageAxis::range, std::pair{p.row, p.col});
        } catch (const MeasurementError&) {
            p.width_range = nan;
        }
    }
    return found;
}

double dip_between(const SalImage& img, const ImagePeak& a, const ImagePeak& b) {
    const ComplexImage& im = img.image;
    const long dr = static_cast<long>(b.row) - static_cast<long>(a.row);
    const long dc = static_cast<long>(b.col) - static_cast<long>(a.col);
    const long steps = std::max(std::labs(dr), std::labs(dc));
    if (steps < 2) return 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (long s = 1; s < steps; ++s) {
        const double f = static_cast<double>(s) / static_cast<double>(steps);
        const auto r = static_cast<std::size_t>(std::lround(static_cast<double>(a.row) + f * static_cast<double>(dr)));
        const auto c = static_cast<std::size_t>(std::lround(static_cast<double>(a.col) + f * static_cast<double>(dc)));
        lowest = std::min(lowest, magnitude(im, r, c));
    }
    const double weaker = std::min(magnitude(im, a.row, a.col), magnitude(im, b.row, b.col));
    if (lowest <= 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(weaker / lowest);
}

DataReductionReport data_reduction_report(double scene_extent, const ChirpDriveParams& p) {
    p.validate();
    if (!(scene_extent > 0.0)) throw InvalidArgument("data reduction: scene extent must be positive");
    DataReductionReport r;
    r.scene_extent = scene_extent;
    r.optical_bandwidth = p.optical_bandwidth();
    r.ratio = scene_extent / (kSpeedOfLight * p.pulse_width);
    r.dechirped_bandwidth = 2.0 * scene_extent * r.optical_bandwidth / (kSpeedOfLight * p.pulse_width);
    r.required_sampling = 2.0 * r.dechirped_bandwidth;
    r.orders_saved = std::log10(r.optical_bandwidth / r.required_sampling);
    return r;
}

}  // namespace eosal
