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

#include "volaug/cutmix.hpp"

namespace volaug {

CutMixParams sample_cutmix_params(int n1, int n2, int width, CutMixMode mode, int delta,
                                  Rng& rng) {
  CutMixParams params;
  params.mode = mode;
  params.delta = delta > 0 ? delta : default_delta(width);
  if (mode == CutMixMode::kWindow) params.shift = sample_mixup_shift(n1, n2, rng);
  return params;
}

}  // namespace volaug
