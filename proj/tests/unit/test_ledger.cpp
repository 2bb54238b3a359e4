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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "eosal/config.hpp"
#include "eosal/eom.hpp"
#include "eosal/imager.hpp"
#include "eosal/ledger.hpp"
#include "eosal/pipeline.hpp"

using namespace eosal;

TEST_CASE("ledger entries") {
    const auto entries = build_ledger();
    REQUIRE(entries.size() >= 6);
    std::map<std::string, LedgerEntry> by_id;
    for (const auto& e : entries) {
        CHECK_FALSE(e.citation.empty());
        CHECK_FALSE(e.claim.empty());
        CHECK(std::isfinite(e.computed));
        CHECK(e.agrees == (std::abs(e.computed / e.published - 1.0) <= 0.01));
        by_id[e.id] = e;
    }

    const auto t1 = preset("table1");
    CHECK(by_id.at("power_share_even").computed == doctest::Approx(sideband_table(1.0, t1.drive, 6).zero_and_second_power()));
    CHECK_FALSE(by_id.at("power_share_even").agrees);
    CHECK(by_id.at("filter_spacing").computed == doctest::Approx(24.97e9).epsilon(1e-3));
    CHECK(by_id.at("required_interval").computed == doctest::Approx(29.97e9).epsilon(1e-3));
    CHECK(by_id.at("dechirped_bandwidth").computed == doctest::Approx(data_reduction_report(1.0, t1.drive).dechirped_bandwidth));
    CHECK(by_id.at("orders_saved").computed == doctest::Approx(3.57).epsilon(2e-3));
    CHECK(by_id.at("hwp_angle").computed == doctest::Approx(kPi / 8.0));
    CHECK(by_id.at("order_offset").computed == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(by_id.at("optical_bandwidth").agrees);
    CHECK(by_id.at("range_resolution").computed == doctest::Approx(kSpeedOfLight / 2e10));
    CHECK(by_id.at("azimuth_resolution").computed == doctest::Approx(theoretical_azimuth_width(t1)));
}

TEST_CASE("ledger formatting") {
    const auto entries = build_ledger();
    const std::string text = format_ledger(entries);
    for (const auto& e : entries) CHECK(text.find(e.id) != std::string::npos);
    const std::string json = ledger_to_json(entries);
    CHECK(json.find("\"published\"") != std::string::npos);
    CHECK_THROWS_AS(build_ledger("/nonexistent/claims.json"), Error);
}
