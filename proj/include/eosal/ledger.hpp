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

#include <filesystem>
#include <string>
#include <vector>

namespace eosal {

struct LedgerEntry {
    std::string id;
    std::string citation;
    std::string claim;
    std::string units;
    double published = 0.0;
    double computed = 0.0;
    std::string note;
    bool agrees = false;  // |computed/published - 1| <= 1 %
};

/// Directory holding published_claims.json: $EOSAL_DATA_DIR, else the build-time path.
std::filesystem::path data_directory();

/// Loads the published values and evaluates each against the simulator.
std::vector<LedgerEntry> build_ledger();
std::vector<LedgerEntry> build_ledger(const std::filesystem::path& claims_file);

std::string format_ledger(const std::vector<LedgerEntry>& entries);
std::string ledger_to_json(const std::vector<LedgerEntry>& entries);

}  // namespace eosal
