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

#ifndef VOLAUG_CUTMIX_HPP_
#define VOLAUG_CUTMIX_HPP_

#include <algorithm>
#include <cassert>
#include <string>

#include "volaug/blend.hpp"
#include "volaug/masks.hpp"
#include "volaug/mixup.hpp"
#include "volaug/rng.hpp"
#include "volaug/types.hpp"

namespace volaug {

enum class CutMixMode { kWindow, kView };

struct CutMixParams {
  CutMixMode mode = CutMixMode::kWindow;
  int shift = 0;  // window mode only
  int delta = 1;
};

/// Mode and delta come from configuration (delta <= 0 selects
/// default_delta(width)); the shift is drawn as for mixup in window mode.
CutMixParams sample_cutmix_params(int n1, int n2, int width, CutMixMode mode, int delta,
                                  Rng& rng);

namespace detail {

/// Per-pixel weights of one frame row (W * C values) from column weights.
inline Eigen::ArrayXf expand_columns(const Eigen::VectorXd& column_weights, int channels) {
  Eigen::ArrayXf weights(column_weights.size() * channels);
  for (Eigen::Index j = 0; j < column_weights.size(); ++j) {
    weights.segment(j * channels, channels).setConstant(static_cast<float>(column_weights[j]));
  }
  return weights;
}

}  // namespace detail

/// Transient window: each frame is split by a vertical plane at
/// round(W * alpha[t]) with a 2*delta linear band; clip 1 fills the left.
/// Label weights use the area of the (rounded) mask actually applied.
template <typename Scalar>
Augmented<Scalar> cutmix_window(const Clip<Scalar>& clip1, const LabelTrack& labels1,
                                const Clip<Scalar>& clip2, const LabelTrack& labels2,
                                int shift, int delta, int fit = 0) {
  check_pair(clip1, labels1, clip2, labels2);
  const AlphaMask alpha = alpha_mask(clip1.num_frames(), clip2.num_frames(), shift);
  const int length = static_cast<int>(alpha.values.size());
  const int width = clip1.width;
  const Eigen::Index row_size = static_cast<Eigen::Index>(width) * clip1.channels;

  Augmented<Scalar> out;
  out.clip = Clip<Scalar>(length, clip1.height, width, clip1.channels, clip1.id);
  out.labels.resize(length, labels1.cols());
  for (int t = 0; t < length; ++t) {
    const int split = window_split_column(width, alpha.values[t]);
    const SpatialMask mask = spatial_mask(clip1.height, width, split, delta);
    const Eigen::VectorXd columns = mask.values.row(0).transpose();
    const double area = mask_area(mask);
    const Eigen::ArrayXf weights = detail::expand_columns(columns, clip1.channels);
    const Scalar* src1 = frame_or_null(clip1, t);
    const Scalar* src2 = frame_or_null(clip2, t - shift);
    Scalar* dst = frame_data(out.clip, t);
    for (int h = 0; h < clip1.height; ++h) {
      const Eigen::Index offset = h * row_size;
      blend_span<Scalar>(dst + offset, weights.data(), src1 ? src1 + offset : nullptr,
                         src2 ? src2 + offset : nullptr, row_size);
    }
    out.labels.row(t) =
        area * label_or_zero(labels1, t) + (1.0 - area) * label_or_zero(labels2, t - shift);
  }
  fit_length(out.clip, out.labels, fit);

  out.record.kind = AugKind::kCutMixWindow;
  out.record.sources = {clip1.id, clip2.id};
  out.record.params.shift = shift;
  out.record.params.scenario = alpha.scenario;
  out.record.params.delta = delta;
  out.record.params.fit = fit;
  return out;
}

/// Transient view: fixed half-frame windows (clip 1 left, clip 2 right) whose
/// content pans left-to-right over the clip, so each window sweeps its
/// source's full width. Labels are 0.5 / 0.5 on every frame.
template <typename Scalar>
Augmented<Scalar> cutmix_view(const Clip<Scalar>& clip1, const LabelTrack& labels1,
                              const Clip<Scalar>& clip2, const LabelTrack& labels2,
                              int delta) {
  check_pair(clip1, labels1, clip2, labels2);
  if (clip1.num_frames() != clip2.num_frames()) {
    throw ParameterError("transient view requires equal lengths");
  }
  const int width = clip1.width;
  if (width % 2 != 0) throw ParameterError("transient view requires an even frame width");
  const int n = clip1.num_frames();
  const int half = width / 2;
  const int channels = clip1.channels;
  const Eigen::VectorXd columns = spatial_mask_row(width, half, delta);

  Augmented<Scalar> out;
  out.clip = Clip<Scalar>(n, clip1.height, width, channels, clip1.id);
  using Seg = Eigen::Map<const Eigen::Array<Scalar, 1, Eigen::Dynamic>>;
  for (int t = 0; t < n; ++t) {
    const int pan = view_pan_offset(t, n, width);
    for (int h = 0; h < clip1.height; ++h) {
      const Eigen::Index base = static_cast<Eigen::Index>(h) * width * channels;
      const Scalar* row1 = clip1.frames.data() + t * clip1.frame_size() + base;
      const Scalar* row2 = clip2.frames.data() + t * clip2.frame_size() + base;
      auto dst = out.clip.frames.row(t).segment(base, static_cast<Eigen::Index>(width) * channels);
      // Outside the band the mask is exactly 0 or 1 and the formula reduces
      // to a copy; pan columns there never leave [0, W).
      const int left = half - delta;
      const int right = half + delta;
      dst.segment(0, left * channels) = Seg(row1 + pan * channels, left * channels);
      dst.segment(right * channels, (width - right) * channels) =
          Seg(row2 + (pan + delta) * channels, (width - right) * channels);
      for (int j = left; j < right; ++j) {
        const int c1 = std::clamp(pan + j, 0, width - 1);
        const int c2 = std::clamp(pan + j - half, 0, width - 1);
        blend_span<Scalar>(dst.data() + j * channels, static_cast<float>(columns[j]),
                           row1 + c1 * channels, row2 + c2 * channels, channels);
      }
    }
  }
  out.labels = 0.5 * labels1 + 0.5 * labels2;

  out.record.kind = AugKind::kCutMixView;
  out.record.sources = {clip1.id, clip2.id};
  out.record.params.delta = delta;
  return out;
}

}  // namespace volaug

#endif  // VOLAUG_CUTMIX_HPP_
