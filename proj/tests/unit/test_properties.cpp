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

// Property suites, run on the 100x scaled fig5 configuration where a full pipeline is needed.
#include <doctest.h>

#include "eosal_test_util.hpp"

using namespace eosal::testing;

namespace {
void require(const PropertyResult& r) { CHECK_MESSAGE(r.ok, r.name << ": " << r.metric << " (limit " << r.limit << ")"); }
}  // namespace

TEST_CASE("Parseval across grid sizes") { require(parseval_property(101)); }

TEST_CASE("bandpass idempotence on random bands") { require(bandpass_idempotence_property(102)); }

TEST_CASE("fractional delays compose") { require(delay_composition_property(103)); }

TEST_CASE("half-wave plate is an involution") { require(hwp_involution_property(104)); }

TEST_CASE("RVP-corrected phase is independent of the quadratic term") { require(rvp_invariance_property(105)); }

TEST_CASE("image formation is linear") { require(image_linearity_property(100.0)); }

TEST_CASE("runs are reproducible by seed") { require(determinism_property(100.0, 106)); }
