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
#include <iosfwd>
#include <string>

#include "eosal/config.hpp"
#include "eosal/manifest.hpp"

namespace eosal {

/// Failure inside one pipeline stage; the CLI maps these to exit code 2.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct RunOptions {
    std::filesystem::path out_dir = "eosal_out";
    unsigned threads = 0;
    std::ostream* log = nullptr;  // progress lines; null is silent
};

/// Runs the stages the config enables, writes their artifacts plus manifest.json into
/// out_dir, and returns the manifest. On failure every file written so far is removed and
/// a StageError naming the stage is thrown.
RunManifest run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

/// Output directory: $EOSAL_OUT_DIR when set, else `fallback`.
std::filesystem::path resolve_out_dir(const std::filesystem::path& fallback);

}  // namespace eosal
