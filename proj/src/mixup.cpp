// Copyright 2026 The volaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "volaug/mixup.hpp"

namespace volaug {

int sample_mixup_shift(int n1, int /*n2*/, Rng& rng) {
  if (n1 < 2) throw ParameterError("clip 1 must have at least 2 frames");
  return static_cast<int>(rng.uniform_int(0, n1 - 1));
}

int fit_source_index(int length, int target, int t) {
  if (length >= target) return (length - target) / 2 + t;
  // round-half-up(t * (length - 1) / (target - 1))
  const long long num = 2LL * t * (length - 1) + (target - 1);
  return static_cast<int>(num / (2LL * (target - 1)));
}

}  // namespace volaug
