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

#include "volaug/freeze.hpp"

#include <string>

namespace volaug {

void check_freeze_segment(int num_frames, FreezeSegment segment) {
  if (segment.start < 0 || segment.start > num_frames - 2) {
    throw ParameterError("freeze start " + std::to_string(segment.start) +
                         " out of range for " + std::to_string(num_frames) + " frames");
  }
  if (segment.length < 2 || segment.length > num_frames - segment.start) {
    throw ParameterError("freeze length " + std::to_string(segment.length) +
                         " out of range at start " + std::to_string(segment.start));
  }
}

FreezeSegment sample_freeze_params(int num_frames, Rng& rng) {
  if (num_frames < 3) throw ParameterError("clip too short to freeze");
  FreezeSegment segment;
  segment.start = static_cast<int>(rng.uniform_int(0, num_frames - 2));
  segment.length = static_cast<int>(rng.uniform_int(2, num_frames - segment.start));
  return segment;
}

}  // namespace volaug
