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

#include <array>
#include <vector>

#include "eosal/signal.hpp"

namespace eosal {

/// 2×2 polarization transfer matrix acting on (horizontal, vertical) field components.
struct JonesMatrix {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};  // [[a, b], [c, d]]

    static JonesMatrix identity() { return {}; }
    JonesMatrix adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    /// max |(M†M - I)_ij|
    double unitarity_error() const;
    double max_abs_diff(const JonesMatrix& other) const;
};

JonesMatrix operator*(const JonesMatrix& x, const JonesMatrix& y);
JonesMatrix operator+(const JonesMatrix& x, const JonesMatrix& y);

/// Single Jones vector (horizontal, vertical).
struct JonesVector {
    cplx h{0.0}, v{0.0};
    double power() const { return std::norm(h) + std::norm(v); }
};

JonesVector operator*(const JonesMatrix& m, const JonesVector& x);

/// Sampled two-component field sharing one grid.
struct JonesField {
    TimeGrid grid;
    std::vector<cplx> horizontal;
    std::vector<cplx> vertical;

    JonesField() = default;
    explicit JonesField(const TimeGrid& g) : grid(g), horizontal(g.num_samples), vertical(g.num_samples) {}

    /// Field s(t)·[1, 1]/√2: linear polarization at 45°.
    static JonesField diagonal(const ComplexEnvelope& s);
    /// Field w(t)·[1, 0].
    static JonesField horizontal_only(const ComplexEnvelope& w);

    double energy() const;  // Σ(|H|² + |V|²)·dt
};

/// Receiver bench settings. PBS amplitudes default to √2/2·(1-σ).
///
/// With `normalized` set (the default) the QWP carries its 1/√2 factor and the PBS entries
/// are scaled by √2, which makes every element lossless at σ = 0. With it cleared the raw
/// published matrices are used: QWP without 1/√2 and PBS entries t, r as given.
struct BenchParams {
    double sigma = 0.0;
    double t_amp = 0.7071067811865476;
    double r_amp = 0.7071067811865476;
    double phi_t = kPi;
    double phi_r = kPi;
    double eta = 0.25 * kPi;  // QWP fast-axis angle
    double theta1 = 0.125 * kPi;  // HWP angle, I arm
    double theta2 = 0.125 * kPi;  // HWP angle, Q arm
    bool normalized = true;

    /// Defaults with t = r = √2/2·(1-σ).
    static BenchParams with_loss(double sigma);
    void validate() const;
};

struct PbsMatrices {
    JonesMatrix transmit;
    JonesMatrix reflect;
};

/// Transmission passes horizontal only, reflection vertical only.
PbsMatrices pbs_matrices(const BenchParams& p);

/// (1/√2)·[[1 - j cos2η, -j sin2η], [-j sin2η, 1 + j cos2η]]; the 1/√2 is dropped when
/// `normalized` is false.
JonesMatrix qwp(double eta, bool normalized = true);

/// [[cos2θ, sin2θ], [sin2θ, -cos2θ]]
JonesMatrix hwp(double theta);

/// Composite transfer from the two bench inputs to one output path.
struct PathTransfer {
    JonesMatrix from_reference;
    JonesMatrix from_signal;
};

/// The four optical paths l1..l4 (index 0..3):
///   l1 = R H1 T Q W + R H1 R S     l2 = T H1 T Q W + T H1 R S
///   l3 = T H2 R Q W + T H2 T S     l4 = R H2 R Q W + R H2 T S
std::array<PathTransfer, 4> path_transfers(const BenchParams& p);

/// Propagates a 45° signal and a horizontal reference through the bench. Throws
/// PolarizationError when the inputs are not in those states.
std::array<JonesField, 4> propagate(const JonesField& signal, const JonesField& reference, const BenchParams& p);

/// Detector photocurrents after balanced detection.
struct IQStream {
    TimeGrid grid;
    std::vector<double> i_samples;
    std::vector<double> q_samples;
};

/// I = |l2|² - |l1|², Q = |l3|² - |l4|².
IQStream balanced_detect(const std::array<JonesField, 4>& paths);

/// propagate followed by balanced_detect without materializing the four path fields.
IQStream detect(const JonesField& signal, const JonesField& reference, const BenchParams& p);

}  // namespace eosal
