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

#ifndef VOLAUG_BLEND_HPP_
#define VOLAUG_BLEND_HPP_

#include <cstdint>
#include <type_traits>

#include "volaug/types.hpp"

namespace volaug {

/// Converts a float blend result to the clip's storage type. u8 results are
/// saturated and rounded half-to-even; f32 results are clamped to [0, 1].
template <typename Scalar>
inline Scalar store_pixel(float v) {
  if constexpr (std::is_same_v<Scalar, std::uint8_t>) {
    // Adding and removing 2^23 rounds like rint in the default mode (exact
    // for |v| < 2^22, far beyond any blend of u8 inputs). Saturating on the
    // integer side keeps the loop free of float branches.
    constexpr float kRound = 8388608.0f;
    int r = static_cast<int>((v + kRound) - kRound);
    r = r > 0 ? r : 0;
    r = r < 255 ? r : 255;
    return static_cast<std::uint8_t>(r);
  } else {
    v = v > 0.0f ? v : 0.0f;
    return v < 1.0f ? v : 1.0f;
  }
}

/// dst[i] = w*src1[i] + (1-w)*src2[i]. A null source is an absent frame and
/// its term is dropped. Plain loops so the compiler can vectorize them.
template <typename Scalar>
void blend_span(Scalar* dst, float weight, const Scalar* src1, const Scalar* src2,
                Eigen::Index size) {
  const float complement = 1.0f - weight;
  if (src1 && src2) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>(weight * static_cast<float>(src1[i]) +
                                   complement * static_cast<float>(src2[i]));
    }
  } else if (src1) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>(weight * static_cast<float>(src1[i]));
    }
  } else if (src2) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>(complement * static_cast<float>(src2[i]));
    }
  } else {
    for (Eigen::Index i = 0; i < size; ++i) dst[i] = Scalar(0);
  }
}

/// Per-element weights: dst[i] = w[i]*src1[i] + (1-w[i])*src2[i].
template <typename Scalar>
void blend_span(Scalar* dst, const float* weights, const Scalar* src1, const Scalar* src2,
                Eigen::Index size) {
  if (src1 && src2) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>(weights[i] * static_cast<float>(src1[i]) +
                                   (1.0f - weights[i]) * static_cast<float>(src2[i]));
    }
  } else if (src1) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>(weights[i] * static_cast<float>(src1[i]));
    }
  } else if (src2) {
    for (Eigen::Index i = 0; i < size; ++i) {
      dst[i] = store_pixel<Scalar>((1.0f - weights[i]) * static_cast<float>(src2[i]));
    }
  } else {
    for (Eigen::Index i = 0; i < size; ++i) dst[i] = Scalar(0);
  }
}

template <typename Scalar>
Scalar* frame_data(Clip<Scalar>& clip, int t) {
  return clip.frames.data() + static_cast<Eigen::Index>(t) * clip.frame_size();
}

template <typename Scalar>
const Scalar* frame_or_null(const Clip<Scalar>& clip, int t) {
  if (t < 0 || t >= clip.num_frames()) return nullptr;
  return clip.frames.data() + static_cast<Eigen::Index>(t) * clip.frame_size();
}

inline Eigen::RowVectorXd label_or_zero(const LabelTrack& labels, int t) {
  if (t < 0 || t >= labels.rows()) return Eigen::RowVectorXd::Zero(labels.cols());
  return labels.row(t);
}

}  // namespace volaug

#endif  // VOLAUG_BLEND_HPP_
