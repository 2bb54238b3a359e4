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

namespace eosal {

/// Bessel function of the first kind J_n(x) for integer order, from the ascending
/// power series Σ (-1)^k (x/2)^{2k+n} / (k!(k+n)!). Accurate to double precision for
/// |x| up to about 20; the modulation indices used here are O(1).
double bessel_j(int order, double x);

}  // namespace eosal
