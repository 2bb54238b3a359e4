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

#include "eosal/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace eosal::fft {
namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    // fftw_plan_* is not thread-safe, fftw_execute_dft on an existing plan is.
    fftw_plan get(int n, Direction dir, fftw_complex* buf) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, dir);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        // ESTIMATE keeps the algorithm choice independent of timing, so output
        // is bit-identical run to run.
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform(std::span<cplx> data, Direction dir) {
    if (data.size() <= 1) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = cache().get(static_cast<int>(data.size()), dir, buf);
    fftw_execute_dft(plan, buf, buf);
}

void inverse(std::span<cplx> data) {
    transform(data, Direction::inverse);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
}

void shift(std::span<cplx> data) {
    std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>((data.size() + 1) / 2), data.end());
}

void inverse_shift(std::span<cplx> data) {
    std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(data.size() / 2), data.end());
}

}  // namespace eosal::fft
