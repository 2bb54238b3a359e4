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

#include <cstddef>
#include <span>
#include <vector>

#include "eosal/constants.hpp"

namespace eosal {

/// Uniform sampling grid for one pulse (fast time).
struct TimeGrid {
    double sample_rate = 1.0;  // Hz
    std::size_t num_samples = 1;
    double t_start = 0.0;  // s, time of sample 0

    double dt() const { return 1.0 / sample_rate; }
    double duration() const { return static_cast<double>(num_samples) / sample_rate; }
    double time(std::size_t i) const { return t_start + static_cast<double>(i) / sample_rate; }
    std::vector<double> times() const;

    /// Grids agree when they sample the same instants (rate and start within 1e-12 relative).
    bool matches(const TimeGrid& other) const;
};

/// Builds a grid with round(sample_rate * duration) samples. Centered grids start at
/// -duration/2 so a pulse of that duration sits on rect(t/Tp).
TimeGrid make_grid(double sample_rate, double duration, bool centered = true);

/// Complex baseband field relative to some carrier. Power of a sample is |s|^2.
struct ComplexEnvelope {
    TimeGrid grid;
    std::vector<cplx> samples;

    ComplexEnvelope() = default;
    explicit ComplexEnvelope(const TimeGrid& g) : grid(g), samples(g.num_samples) {}
    ComplexEnvelope(const TimeGrid& g, std::vector<cplx> s);

    std::size_t size() const { return samples.size(); }
    /// Σ|s|²·dt
    double energy() const;
    /// Mean of |s|².
    double mean_power() const;
};

/// Two-sided spectrum on a uniform frequency axis covering [-Fs/2, Fs/2).
/// values[k] approximates the continuous Fourier transform ∫ s(t) e^{-j2πft} dt
/// (time origin at t = 0, not at the first sample), so Σ|values|²·df equals
/// the envelope energy.
struct Spectrum {
    std::vector<double> freqs;  // Hz, strictly increasing
    std::vector<cplx> values;
    double resolution_bw = 0.0;  // Hz, bin spacing

    double energy() const;
    /// Σ|values|²·df over freqs in [f_lo, f_hi).
    double band_energy(double f_lo, double f_hi) const;
};

Spectrum spectrum(const ComplexEnvelope& env);

/// Inverse of spectrum(); the grid supplies t_start and must have as many samples
/// as the spectrum has bins.
ComplexEnvelope inverse_spectrum(const Spectrum& spec, const TimeGrid& grid);

/// Frequency mask applied by transform, mask, inverse transform. With edge_width == 0
/// the mask is a brick wall passing [f_lo, f_hi]; otherwise each edge is a raised-cosine
/// transition of the given width centred on the band edge.
ComplexEnvelope bandpass(const ComplexEnvelope& env, double f_lo, double f_hi, double edge_width = 0.0);

/// Ideal low-pass at the decimated Nyquist rate, then keep every factor-th sample.
/// The caller guarantees the signal occupies less than Fs/(2·factor).
ComplexEnvelope decimate(const ComplexEnvelope& env, std::size_t factor);
/// Same, also reporting the fraction of energy outside the kept band.
ComplexEnvelope decimate(const ComplexEnvelope& env, std::size_t factor, double& discarded_fraction);

/// Fraction of energy a decimation by `factor` would discard.
double decimation_loss(const ComplexEnvelope& env, std::size_t factor);

/// Multiplies by exp(-j2π f_shift t): moves a component at f_shift to 0 Hz.
ComplexEnvelope frequency_shift(const ComplexEnvelope& env, double f_shift);

/// Phase-unwrap instantaneous frequency. Entry i is the frequency between samples i and
/// i+1, located at time(i) + dt/2.
std::vector<double> instantaneous_frequency(const ComplexEnvelope& env);

/// Least-squares straight line y ≈ slope·x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace eosal
