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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eosal {

enum class WindowKind { rect, hann, taylor };

/// Symmetric taper of length n. Taylor uses nbar = 4 and -30 dB sidelobes.
std::vector<double> make_window(WindowKind kind, std::size_t n);

/// Mean of w²: the factor by which the window scales total energy of a white signal.
double window_energy_factor(const std::vector<double>& w);

std::string_view to_string(WindowKind kind);
std::optional<WindowKind> parse_window(std::string_view name);

}  // namespace eosal
