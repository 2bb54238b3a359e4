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

#include "eosal/config.hpp"
#include "eosal/imager.hpp"

namespace eosal {

/// Transmit-side signals of one pulse.
struct TransmitChain {
    ComplexEnvelope modulated;  // modulator output at the modulation rate, carrier f_c
    ComplexEnvelope filtered;  // order q only, same grid and carrier
    ComplexEnvelope order_baseband;  // filtered, referenced to f_c + q·f0
    ComplexEnvelope tx;  // order_baseband at the receiver rate after the EDFA
};

/// Runs laser → AWG → EOM → filter → EDFA. With `with_laser` false the laser is ideal.
TransmitChain build_transmit_chain(const ExperimentConfig& cfg, bool with_laser = true);

bool laser_is_ideal(const LaserParams& p);

struct ImagingResult {
    RangeDopplerMatrix range_compressed;  // before RCMC
    RangeDopplerMatrix range_doppler;  // after RCMC (identical when disabled)
    SalImage image;
    double max_range_migration = 0.0;  // m
    double azimuth_rate = 0.0;  // K_a, Hz/s
};

/// Streams every pulse through scene → bench → dechirp, then focuses the image. Peaks are
/// filled in, one per configured target at most.
ImagingResult run_imaging(const ComplexEnvelope& tx, const ExperimentConfig& cfg, unsigned threads = 0);

/// Per-pulse beats only (no focusing); used by tests.
std::vector<ComplexEnvelope> pulse_beats(const ComplexEnvelope& tx, const ExperimentConfig& cfg,
                                         std::span<const double> slow_time, unsigned threads = 0);

/// Theoretical −3 dB widths for a rectangular window: 0.886·c/(2·B_opt) and 0.886·v/(K_a·T_a).
double theoretical_range_width(const ExperimentConfig& cfg);
double theoretical_azimuth_width(const ExperimentConfig& cfg);

}  // namespace eosal
