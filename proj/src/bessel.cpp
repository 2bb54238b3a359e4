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

#include "eosal/bessel.hpp"

#include <cmath>
#include <cstdlib>

namespace eosal {

double bessel_j(int order, double x) {
    const int n = std::abs(order);
    const double half = 0.5 * x;

    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;

    const double q = -half * half;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (k >= 30 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    // J_{-n}(x) = (-1)^n J_n(x)
    return (order < 0 && (n % 2 == 1)) ? -sum : sum;
}

}  // namespace eosal
