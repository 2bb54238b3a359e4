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

#include "eosal/window.hpp"

#include <cmath>

#include "eosal/constants.hpp"

namespace eosal {
namespace {

// Taylor coefficients, following the usual Carrara/Goodman/Majewski expression.
std::vector<double> taylor_window(std::size_t n, int nbar, double sll_db) {
    const double eta = std::pow(10.0, -sll_db / 20.0);
    const double a = std::acosh(eta) / kPi;
    const double sp2 = static_cast<double>(nbar * nbar) / (a * a + (nbar - 0.5) * (nbar - 0.5));
    std::vector<double> fm(static_cast<std::size_t>(nbar - 1));
    for (int m = 1; m < nbar; ++m) {
        double num = 1.0, den = 1.0;
        for (int i = 1; i < nbar; ++i) {
            num *= 1.0 - (m * m) / (sp2 * (a * a + (i - 0.5) * (i - 0.5)));
            if (i != m) den *= 1.0 - static_cast<double>(m * m) / static_cast<double>(i * i);
        }
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        fm[static_cast<std::size_t>(m - 1)] = sign * num / (2.0 * den);
    }
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1)) / static_cast<double>(n);
        double v = 1.0;
        for (int m = 1; m < nbar; ++m) v += 2.0 * fm[static_cast<std::size_t>(m - 1)] * std::cos(kTwoPi * m * x);
        w[k] = v;
    }
    return w;
}

}  // namespace

std::vector<double> make_window(WindowKind kind, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n <= 1) return w;
    switch (kind) {
        case WindowKind::rect:
            break;
        case WindowKind::hann:
            for (std::size_t k = 0; k < n; ++k) w[k] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n - 1));
            break;
        case WindowKind::taylor:
            w = taylor_window(n, 4, -30.0);
            break;
    }
    return w;
}

double window_energy_factor(const std::vector<double>& w) {
    if (w.empty()) return 0.0;
    double s = 0.0;
    for (double v : w) s += v * v;
    return s / static_cast<double>(w.size());
}

std::string_view to_string(WindowKind kind) {
    switch (kind) {
        case WindowKind::rect: return "rect";
        case WindowKind::hann: return "hann";
        case WindowKind::taylor: return "taylor";
    }
    return "rect";
}

std::optional<WindowKind> parse_window(std::string_view name) {
    if (name == "rect") return WindowKind::rect;
    if (name == "hann") return WindowKind::hann;
    if (name == "taylor") return WindowKind::taylor;
    return std::nullopt;
}

}  // namespace eosal
