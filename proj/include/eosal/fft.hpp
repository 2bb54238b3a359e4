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

#include <span>

#include "eosal/constants.hpp"

namespace eosal::fft {

enum class Direction { forward, inverse };

/// Unnormalized in-place DFT. Forward uses exp(-j2πkn/N), inverse exp(+j2πkn/N)
/// without the 1/N factor. Safe to call from several threads at once; plans are
/// cached per (size, direction).
void transform(std::span<cplx> data, Direction dir);

inline void forward(std::span<cplx> data) { transform(data, Direction::forward); }

/// Inverse DFT including the 1/N normalization.
void inverse(std::span<cplx> data);

/// Swap halves so that index 0 maps to the most negative frequency.
void shift(std::span<cplx> data);
void inverse_shift(std::span<cplx> data);

}  // namespace eosal::fft
