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

#include <stdexcept>
#include <string>

namespace eosal {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, non-positive rate, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two signals that must share a time grid do not.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A band or delay does not fit the sampled representation.
class NotRepresentable : public Error {
public:
    using Error::Error;
};

/// Polarization state outside what the receiver model is derived for.
class PolarizationError : public Error {
public:
    using Error::Error;
};

/// Metrology failed to find what it was asked to measure.
class MeasurementError : public Error {
public:
    using Error::Error;
};

}  // namespace eosal
