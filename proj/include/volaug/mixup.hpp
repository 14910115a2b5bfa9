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

#ifndef VOLAUG_MIXUP_HPP_
#define VOLAUG_MIXUP_HPP_

#include <string>

#include "volaug/blend.hpp"
#include "volaug/masks.hpp"
#include "volaug/rng.hpp"
#include "volaug/types.hpp"

namespace volaug {

struct MixUpOptions {
  bool hard = false;  // threshold alpha at 0.5 (ties to clip 1)
  int fit = 0;        // 0 keeps the natural length
};

/// Uniform shift of clip 2 in [0, n1 - 1].
int sample_mixup_shift(int n1, int n2, Rng& rng);

/// Source frame index of output frame t when a clip of `length` frames is
/// fitted to `target` frames: center crop when longer, nearest-frame uniform
/// resampling when shorter.
int fit_source_index(int length, int target, int t);

/// Applies fit_source_index to a clip and its labels.
template <typename Scalar>
void fit_length(Clip<Scalar>& clip, LabelTrack& labels, int target) {
  const int length = clip.num_frames();
  if (target <= 0 || target == length) return;
  if (target < 2) throw ParameterError("fit length must be >= 2");
  FrameArray<Scalar> frames(target, clip.frame_size());
  LabelTrack fitted(target, labels.cols());
  for (int t = 0; t < target; ++t) {
    const int source = fit_source_index(length, target, t);
    frames.row(t) = clip.frames.row(source);
    fitted.row(t) = labels.row(source);
  }
  clip.frames = std::move(frames);
  labels = std::move(fitted);
}

inline void check_pair(const auto& clip1, const LabelTrack& labels1, const auto& clip2,
                       const LabelTrack& labels2) {
  if (!clip1.same_geometry(clip2)) throw ParameterError("incompatible clip geometry");
  if (labels1.rows() != clip1.num_frames() || labels2.rows() != clip2.num_frames()) {
    throw ParameterError("label track length does not match clip");
  }
  if (labels1.cols() != labels2.cols()) throw ParameterError("label spaces differ");
}

/// Temporal blend of clip 1 with clip 2 delayed by `shift` frames, weighted
/// per frame by alpha_mask(n1, n2, shift). Absent frames are zero.
template <typename Scalar>
Augmented<Scalar> mixup(const Clip<Scalar>& clip1, const LabelTrack& labels1,
                        const Clip<Scalar>& clip2, const LabelTrack& labels2, int shift,
                        const MixUpOptions& options = {}) {
  check_pair(clip1, labels1, clip2, labels2);
  AlphaMask alpha = alpha_mask(clip1.num_frames(), clip2.num_frames(), shift);
  if (options.hard) alpha = harden(std::move(alpha));
  const int length = static_cast<int>(alpha.values.size());

  Augmented<Scalar> out;
  out.clip = Clip<Scalar>(length, clip1.height, clip1.width, clip1.channels,
                          clip1.id);
  out.labels.resize(length, labels1.cols());
  for (int t = 0; t < length; ++t) {
    const double a = alpha.values[t];
    blend_span<Scalar>(frame_data(out.clip, t), static_cast<float>(a), frame_or_null(clip1, t),
                       frame_or_null(clip2, t - shift), out.clip.frame_size());
    out.labels.row(t) =
        a * label_or_zero(labels1, t) + (1.0 - a) * label_or_zero(labels2, t - shift);
  }
  fit_length(out.clip, out.labels, options.fit);

  out.record.kind = AugKind::kMixUp;
  out.record.sources = {clip1.id, clip2.id};
  out.record.params.shift = shift;
  out.record.params.scenario = alpha.scenario;
  out.record.params.hard = options.hard;
  out.record.params.fit = options.fit;
  return out;
}

/// mixup with the alpha mask hardened to {0, 1}.
template <typename Scalar>
Augmented<Scalar> mixup_hard(const Clip<Scalar>& clip1, const LabelTrack& labels1,
                             const Clip<Scalar>& clip2, const LabelTrack& labels2,
                             int shift, int fit = 0) {
  return mixup(clip1, labels1, clip2, labels2, shift, MixUpOptions{true, fit});
}

}  // namespace volaug

#endif  // VOLAUG_MIXUP_HPP_
