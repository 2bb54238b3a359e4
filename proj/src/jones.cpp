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

#include "eosal/jones.hpp"

#include <algorithm>
#include <cmath>

#include "eosal/error.hpp"

namespace eosal {
namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

void check_inputs(const JonesField& signal, const JonesField& reference) {
    if (!signal.grid.matches(reference.grid) || signal.horizontal.size() != reference.horizontal.size())
        throw GridMismatch("bench: signal and reference grids differ");
    double s_scale = 0.0, w_scale = 0.0;
    for (std::size_t i = 0; i < signal.horizontal.size(); ++i) {
        s_scale = std::max({s_scale, std::abs(signal.horizontal[i]), std::abs(signal.vertical[i])});
        w_scale = std::max(w_scale, std::abs(reference.horizontal[i]));
    }
    for (std::size_t i = 0; i < signal.horizontal.size(); ++i) {
        if (std::abs(signal.horizontal[i] - signal.vertical[i]) > 1e-9 * s_scale)
            throw PolarizationError("bench: signal must be linearly polarized at 45 degrees");
        if (std::abs(reference.vertical[i]) > 1e-9 * std::max(w_scale, 1e-300))
            throw PolarizationError("bench: reference must be horizontally polarized");
    }
}

}  // namespace

double JonesMatrix::unitarity_error() const {
    const JonesMatrix p = adjoint() * (*this);
    return std::max({std::abs(p.a - 1.0), std::abs(p.b), std::abs(p.c), std::abs(p.d - 1.0)});
}

double JonesMatrix::max_abs_diff(const JonesMatrix& o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

JonesMatrix operator*(const JonesMatrix& x, const JonesMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

JonesMatrix operator+(const JonesMatrix& x, const JonesMatrix& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

JonesVector operator*(const JonesMatrix& m, const JonesVector& x) {
    return {m.a * x.h + m.b * x.v, m.c * x.h + m.d * x.v};
}

JonesField JonesField::diagonal(const ComplexEnvelope& s) {
    JonesField f(s.grid);
    for (std::size_t i = 0; i < s.size(); ++i) f.horizontal[i] = f.vertical[i] = s.samples[i] * kSqrtHalf;
    return f;
}

JonesField JonesField::horizontal_only(const ComplexEnvelope& w) {
    JonesField f(w.grid);
    f.horizontal = w.samples;
    return f;
}

double JonesField::energy() const {
    double e = 0.0;
    for (std::size_t i = 0; i < horizontal.size(); ++i) e += std::norm(horizontal[i]) + std::norm(vertical[i]);
    return e * grid.dt();
}

BenchParams BenchParams::with_loss(double sigma) {
    BenchParams p;
    p.sigma = sigma;
    p.t_amp = p.r_amp = kSqrtHalf * (1.0 - sigma);
    return p;
}

void BenchParams::validate() const {
    if (!(sigma >= 0.0 && sigma < 1.0)) throw InvalidArgument("bench: sigma must lie in [0, 1)");
    if (!(t_amp > 0.0 && t_amp <= 1.0)) throw InvalidArgument("bench: t must lie in (0, 1]");
    if (!(r_amp > 0.0 && r_amp <= 1.0)) throw InvalidArgument("bench: r must lie in (0, 1]");
    if (normalized && (t_amp > kSqrtHalf * (1.0 + 1e-12) || r_amp > kSqrtHalf * (1.0 + 1e-12)))
        throw InvalidArgument("bench: normalized PBS amplitudes cannot exceed sqrt(2)/2");
}

PbsMatrices pbs_matrices(const BenchParams& p) {
    const double scale = p.normalized ? std::sqrt(2.0) : 1.0;
    PbsMatrices m;
    m.transmit = {std::polar(scale * p.t_amp, p.phi_t), 0.0, 0.0, 0.0};
    m.reflect = {0.0, 0.0, 0.0, std::polar(scale * p.r_amp, p.phi_r)};
    return m;
}

JonesMatrix qwp(double eta, bool normalized) {
    const double c = std::cos(2.0 * eta);
    const double s = std::sin(2.0 * eta);
    const double k = normalized ? kSqrtHalf : 1.0;
    const cplx j{0.0, 1.0};
    return {k * (1.0 - j * c), k * (-j * s), k * (-j * s), k * (1.0 + j * c)};
}

JonesMatrix hwp(double theta) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    return {c, s, s, -c};
}

std::array<PathTransfer, 4> path_transfers(const BenchParams& p) {
    p.validate();
    const auto [t, r] = pbs_matrices(p);
    const JonesMatrix q = qwp(p.eta, p.normalized);
    const JonesMatrix h1 = hwp(p.theta1);
    const JonesMatrix h2 = hwp(p.theta2);
    return {{
        {r * h1 * t * q, r * h1 * r},
        {t * h1 * t * q, t * h1 * r},
        {t * h2 * r * q, t * h2 * t},
        {r * h2 * r * q, r * h2 * t},
    }};
}

std::array<JonesField, 4> propagate(const JonesField& signal, const JonesField& reference, const BenchParams& p) {
    check_inputs(signal, reference);
    const auto paths = path_transfers(p);
    std::array<JonesField, 4> out{JonesField(signal.grid), JonesField(signal.grid), JonesField(signal.grid),
                                  JonesField(signal.grid)};
    for (std::size_t i = 0; i < signal.horizontal.size(); ++i) {
        const JonesVector s{signal.horizontal[i], signal.vertical[i]};
        const JonesVector w{reference.horizontal[i], reference.vertical[i]};
        for (std::size_t k = 0; k < 4; ++k) {
            const JonesVector a = paths[k].from_reference * w;
            const JonesVector b = paths[k].from_signal * s;
            out[k].horizontal[i] = a.h + b.h;
            out[k].vertical[i] = a.v + b.v;
        }
    }
    return out;
}

IQStream balanced_detect(const std::array<JonesField, 4>& paths) {
    const TimeGrid& g = paths[0].grid;
    for (const auto& f : paths)
        if (!f.grid.matches(g) || f.horizontal.size() != g.num_samples)
            throw GridMismatch("balanced_detect: paths on different grids");
    IQStream iq{g, std::vector<double>(g.num_samples), std::vector<double>(g.num_samples)};
    auto power = [&](std::size_t k, std::size_t i) { return std::norm(paths[k].horizontal[i]) + std::norm(paths[k].vertical[i]); };
    for (std::size_t i = 0; i < g.num_samples; ++i) {
        iq.i_samples[i] = power(1, i) - power(0, i);
        iq.q_samples[i] = power(2, i) - power(3, i);
    }
    return iq;
}

IQStream detect(const JonesField& signal, const JonesField& reference, const BenchParams& p) {
    check_inputs(signal, reference);
    const auto paths = path_transfers(p);
    const TimeGrid& g = signal.grid;
    IQStream iq{g, std::vector<double>(g.num_samples), std::vector<double>(g.num_samples)};
    for (std::size_t i = 0; i < g.num_samples; ++i) {
        const JonesVector s{signal.horizontal[i], signal.vertical[i]};
        const JonesVector w{reference.horizontal[i], reference.vertical[i]};
        double pw[4];
        for (std::size_t k = 0; k < 4; ++k) {
            const JonesVector a = paths[k].from_reference * w;
            const JonesVector b = paths[k].from_signal * s;
            pw[k] = std::norm(a.h + b.h) + std::norm(a.v + b.v);
        }
        iq.i_samples[i] = pw[1] - pw[0];
        iq.q_samples[i] = pw[2] - pw[3];
    }
    return iq;
}

}  // namespace eosal
