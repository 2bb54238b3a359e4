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

#include "eosal/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eosal/error.hpp"
#include "eosal/fft.hpp"

namespace eosal {
namespace {

// Signed DFT bin index for position k of an unshifted transform.
inline long signed_bin(std::size_t k, std::size_t n) {
    return k <= (n - 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

double mask_gain(double f, double f_lo, double f_hi, double edge) {
    if (edge <= 0.0) return (f >= f_lo && f <= f_hi) ? 1.0 : 0.0;
    const double half = 0.5 * edge;
    auto rise = [&](double x) {  // x in [-half, half] -> 0..1
        return 0.5 * (1.0 + std::sin(kPi * x / edge));
    };
    if (f < f_lo - half || f > f_hi + half) return 0.0;
    if (f < f_lo + half) return rise(f - f_lo);
    if (f > f_hi - half) return rise(f_hi - f);
    return 1.0;
}

}  // namespace

std::vector<double> TimeGrid::times() const {
    std::vector<double> t(num_samples);
    for (std::size_t i = 0; i < num_samples; ++i) t[i] = time(i);
    return t;
}

bool TimeGrid::matches(const TimeGrid& other) const {
    if (num_samples != other.num_samples) return false;
    if (!close_rel(sample_rate, other.sample_rate, 1e-12)) return false;
    return std::abs(t_start - other.t_start) <= 1e-12 * std::max(duration(), std::abs(t_start)) + 1e-3 * dt();
}

TimeGrid make_grid(double sample_rate, double duration, bool centered) {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) throw InvalidArgument("make_grid: sample_rate must be positive");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidArgument("make_grid: duration must be positive");
    const double count = std::round(sample_rate * duration);
    if (count < 1.0) throw InvalidArgument("make_grid: grid would be empty");
    TimeGrid g;
    g.sample_rate = sample_rate;
    g.num_samples = static_cast<std::size_t>(count);
    g.t_start = centered ? -0.5 * duration : 0.0;
    return g;
}

ComplexEnvelope::ComplexEnvelope(const TimeGrid& g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
    if (samples.size() != grid.num_samples) throw GridMismatch("ComplexEnvelope: sample count does not match grid");
}

double ComplexEnvelope::energy() const {
    double e = 0.0;
    for (const auto& v : samples) e += std::norm(v);
    return e * grid.dt();
}

double ComplexEnvelope::mean_power() const {
    if (samples.empty()) return 0.0;
    double e = 0.0;
    for (const auto& v : samples) e += std::norm(v);
    return e / static_cast<double>(samples.size());
}

double Spectrum::energy() const {
    double e = 0.0;
    for (const auto& v : values) e += std::norm(v);
    return e * resolution_bw;
}

double Spectrum::band_energy(double f_lo, double f_hi) const {
    auto first = std::lower_bound(freqs.begin(), freqs.end(), f_lo);
    auto last = std::lower_bound(freqs.begin(), freqs.end(), f_hi);
    double e = 0.0;
    for (auto it = first; it != last; ++it) e += std::norm(values[static_cast<std::size_t>(it - freqs.begin())]);
    return e * resolution_bw;
}

Spectrum spectrum(const ComplexEnvelope& env) {
    const std::size_t n = env.size();
    if (n == 0) throw InvalidArgument("spectrum: empty envelope");
    std::vector<cplx> x = env.samples;
    fft::forward(x);
    const double dt = env.grid.dt();
    const double df = env.grid.sample_rate / static_cast<double>(n);
    const double t0 = env.grid.t_start;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_bin(k, n)) * df;
        x[k] *= dt * std::polar(1.0, -kTwoPi * f * t0);
    }
    fft::shift(x);

    Spectrum s;
    s.resolution_bw = df;
    s.values = std::move(x);
    s.freqs.resize(n);
    const long half = static_cast<long>(n / 2);
    for (std::size_t k = 0; k < n; ++k) s.freqs[k] = static_cast<double>(static_cast<long>(k) - half) * df;
    return s;
}

ComplexEnvelope inverse_spectrum(const Spectrum& spec, const TimeGrid& grid) {
    const std::size_t n = spec.values.size();
    if (n != grid.num_samples) throw GridMismatch("inverse_spectrum: bin count does not match grid");
    std::vector<cplx> x = spec.values;
    fft::inverse_shift(x);
    const double df = grid.sample_rate / static_cast<double>(n);
    const double inv_dt = grid.sample_rate;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_bin(k, n)) * df;
        x[k] *= inv_dt * std::polar(1.0, kTwoPi * f * grid.t_start);
    }
    fft::inverse(x);
    return ComplexEnvelope(grid, std::move(x));
}

ComplexEnvelope bandpass(const ComplexEnvelope& env, double f_lo, double f_hi, double edge_width) {
    if (!(f_lo < f_hi)) throw InvalidArgument("bandpass: f_lo must be below f_hi");
    const double nyq = 0.5 * env.grid.sample_rate;
    if (f_lo < -nyq || f_hi > nyq) throw NotRepresentable("bandpass: band outside [-Fs/2, Fs/2]");
    if (edge_width < 0.0) throw InvalidArgument("bandpass: negative edge width");

    const std::size_t n = env.size();
    std::vector<cplx> x = env.samples;
    fft::forward(x);
    const double df = env.grid.sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_bin(k, n)) * df;
        x[k] *= mask_gain(f, f_lo, f_hi, edge_width);
    }
    fft::inverse(x);
    return ComplexEnvelope(env.grid, std::move(x));
}

double decimation_loss(const ComplexEnvelope& env, std::size_t factor) {
    if (factor < 1) throw InvalidArgument("decimate: factor must be >= 1");
    if (factor == 1) return 0.0;
    const std::size_t n = env.size();
    std::vector<cplx> x = env.samples;
    fft::forward(x);
    const long keep = static_cast<long>(n / factor);
    const long lo = -keep / 2;
    const long hi = lo + keep;
    double inside = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const long b = signed_bin(k, n);
        const double p = std::norm(x[k]);
        total += p;
        if (b >= lo && b < hi) inside += p;
    }
    return total > 0.0 ? (total - inside) / total : 0.0;
}

ComplexEnvelope decimate(const ComplexEnvelope& env, std::size_t factor) {
    double discarded = 0.0;
    return decimate(env, factor, discarded);
}

ComplexEnvelope decimate(const ComplexEnvelope& env, std::size_t factor, double& discarded_fraction) {
    if (factor < 1) throw InvalidArgument("decimate: factor must be >= 1");
    discarded_fraction = 0.0;
    if (factor == 1) return env;
    const std::size_t n = env.size();
    if (n < factor) throw InvalidArgument("decimate: factor exceeds sample count");

    std::vector<cplx> x = env.samples;
    fft::forward(x);
    {
        const long keep = static_cast<long>(n / factor);
        const long lo = -keep / 2;
        double inside = 0.0, total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const long b = signed_bin(k, n);
            const double p = std::norm(x[k]);
            total += p;
            if (b >= lo && b < lo + keep) inside += p;
        }
        discarded_fraction = total > 0.0 ? (total - inside) / total : 0.0;
    }

    TimeGrid out_grid;
    out_grid.sample_rate = env.grid.sample_rate / static_cast<double>(factor);
    out_grid.t_start = env.grid.t_start;

    if (n % factor == 0) {
        // Keep the central m bins and transform back at the reduced length.
        const std::size_t m = n / factor;
        const long lo = -static_cast<long>(m) / 2;
        std::vector<cplx> y(m);
        for (long b = lo; b < lo + static_cast<long>(m); ++b) {
            const std::size_t src = static_cast<std::size_t>((b + static_cast<long>(n)) % static_cast<long>(n));
            const std::size_t dst = static_cast<std::size_t>((b + static_cast<long>(m)) % static_cast<long>(m));
            y[dst] = x[src];
        }
        fft::inverse(y);
        const double scale = 1.0 / static_cast<double>(factor);
        for (auto& v : y) v *= scale;
        out_grid.num_samples = m;
        return ComplexEnvelope(out_grid, std::move(y));
    }

    const long keep = static_cast<long>(n / factor);
    const long lo = -keep / 2;
    const long hi = lo + keep;
    for (std::size_t k = 0; k < n; ++k) {
        const long b = signed_bin(k, n);
        if (b < lo || b >= hi) x[k] = 0.0;
    }
    fft::inverse(x);
    std::vector<cplx> y;
    y.reserve(n / factor + 1);
    for (std::size_t i = 0; i < n; i += factor) y.push_back(x[i]);
    out_grid.num_samples = y.size();
    return ComplexEnvelope(out_grid, std::move(y));
}

ComplexEnvelope frequency_shift(const ComplexEnvelope& env, double f_shift) {
    ComplexEnvelope out(env.grid);
    for (std::size_t i = 0; i < env.size(); ++i) {
        // Reduce the cycle count before forming the angle to keep precision at large f·t.
        const double cycles = f_shift * env.grid.time(i);
        const double frac = cycles - std::round(cycles);
        out.samples[i] = env.samples[i] * std::polar(1.0, -kTwoPi * frac);
    }
    return out;
}

std::vector<double> instantaneous_frequency(const ComplexEnvelope& env) {
    const std::size_t n = env.size();
    if (n < 2) return {};
    std::vector<double> f(n - 1);
    const double scale = env.grid.sample_rate / kTwoPi;
    for (std::size_t i = 0; i + 1 < n; ++i) f[i] = std::arg(env.samples[i + 1] * std::conj(env.samples[i])) * scale;
    return f;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fit_line: need at least two matching points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw InvalidArgument("fit_line: abscissae are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace eosal
