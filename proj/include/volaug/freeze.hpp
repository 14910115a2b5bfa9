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

#ifndef VOLAUG_FREEZE_HPP_
#define VOLAUG_FREEZE_HPP_

#include <span>
#include <string>
#include <utility>

#include "volaug/rng.hpp"
#include "volaug/types.hpp"

namespace volaug {

struct FreezeSegment {
  int start = 0;   // r, 0-based
  int length = 2;  // m
};

struct FreezeOptions {
  /// -1 marks frozen frames with an all-zeros label row. Otherwise frozen rows
  /// become one-hot at this class (a reserved background channel).
  int background_class = -1;
};

/// Throws ParameterError unless 0 <= r <= n-2 and 2 <= m <= n-r.
void check_freeze_segment(int num_frames, FreezeSegment segment);

/// Uniform r in [0, n-2], then uniform m in [2, n-r].
FreezeSegment sample_freeze_params(int num_frames, Rng& rng);

/// Replicates frame r for m positions and shifts the remainder right,
/// dropping what overflows the original length. Frozen rows lose their label.
template <typename Scalar>
Augmented<Scalar> freeze(const Clip<Scalar>& clip, const LabelTrack& labels,
                         FreezeSegment segment, const FreezeOptions& options = {}) {
  const int n = clip.num_frames();
  check_freeze_segment(n, segment);
  if (labels.rows() != n) throw ParameterError("label track length does not match clip");
  if (options.background_class >= labels.cols()) {
    throw ParameterError("background class out of range");
  }
  const int r = segment.start;
  const int m = segment.length;

  Augmented<Scalar> out;
  out.clip = Clip<Scalar>(n, clip.height, clip.width, clip.channels, clip.id);
  out.labels.resize(n, labels.cols());

  out.clip.frames.topRows(r) = clip.frames.topRows(r);
  out.labels.topRows(r) = labels.topRows(r);
  out.clip.frames.middleRows(r, m).rowwise() = clip.frames.row(r);
  out.labels.middleRows(r, m).setZero();
  if (options.background_class >= 0) out.labels.middleRows(r, m).col(options.background_class).setOnes();
  const int tail = n - r - m;
  out.clip.frames.bottomRows(tail) = clip.frames.middleRows(r + 1, tail);
  out.labels.bottomRows(tail) = labels.middleRows(r + 1, tail);

  out.record.kind = AugKind::kFreeze;
  out.record.sources = {clip.id};
  out.record.params.segments = {{r, m}};
  return out;
}

/// Sequential composition of freeze, one segment at a time.
template <typename Scalar>
Augmented<Scalar> freeze_multi(const Clip<Scalar>& clip, const LabelTrack& labels,
                               std::span<const FreezeSegment> segments,
                               const FreezeOptions& options = {}) {
  Augmented<Scalar> out{clip, labels, {}};
  for (const FreezeSegment& segment : segments) {
    out = freeze(out.clip, out.labels, segment, options);
  }
  out.record.kind = AugKind::kFreeze;
  out.record.sources = {clip.id};
  out.record.params.segments.clear();
  for (const FreezeSegment& s : segments) out.record.params.segments.emplace_back(s.start, s.length);
  return out;
}

}  // namespace volaug

#endif  // VOLAUG_FREEZE_HPP_
