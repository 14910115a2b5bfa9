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

#ifndef VOLAUG_TYPES_HPP_
#define VOLAUG_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace volaug {

/// Raised when an operation receives parameters outside its legal domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on unreadable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DType : std::uint8_t { kU8 = 0, kF32 = 1 };

template <typename Scalar>
struct DTypeOf;
template <>
struct DTypeOf<std::uint8_t> {
  static constexpr DType value = DType::kU8;
};
template <>
struct DTypeOf<float> {
  static constexpr DType value = DType::kF32;
};

/// Frame storage: one row per frame, each row holds H*W*C values in h, w, c
/// order.
template <typename Scalar>
using FrameArray =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A T x H x W x C video volume.
template <typename Scalar>
struct Clip {
  FrameArray<Scalar> frames;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::string id;

  Clip() = default;
  Clip(int num_frames, int h, int w, int c, std::string clip_id = {})
      : frames(FrameArray<Scalar>::Zero(num_frames,
                                        static_cast<Eigen::Index>(h) * w * c)),
        height(h),
        width(w),
        channels(c),
        id(std::move(clip_id)) {}

  int num_frames() const { return static_cast<int>(frames.rows()); }
  Eigen::Index frame_size() const { return frames.cols(); }
  static constexpr DType dtype() { return DTypeOf<Scalar>::value; }

  Scalar& at(int t, int h, int w, int c) {
    return frames(t, (static_cast<Eigen::Index>(h) * width + w) * channels + c);
  }
  Scalar at(int t, int h, int w, int c) const {
    return frames(t, (static_cast<Eigen::Index>(h) * width + w) * channels + c);
  }

  bool same_geometry(const Clip& other) const {
    return height == other.height && width == other.width &&
           channels == other.channels;
  }
};

using ClipU8 = Clip<std::uint8_t>;
using ClipF32 = Clip<float>;

/// Runtime-typed clip, as read from disk.
using ClipVolume = std::variant<ClipU8, ClipF32>;

DType dtype_of(const ClipVolume& clip);
int num_frames_of(const ClipVolume& clip);
const std::string& id_of(const ClipVolume& clip);

/// Throws ParameterError unless the clip satisfies the volume invariants
/// (T >= 2, H, W >= 1, C in {1, 3}, f32 values in [0, 1]).
void validate(const ClipVolume& clip);

/// Per-frame soft labels, T x K.
using LabelTrack = Eigen::MatrixXd;

/// Per-frame per-class scores, T x K. Rows need not sum to one.
using PredictionTrack = Eigen::MatrixXd;

/// Per-frame temporal blend weight for clip 1.
struct AlphaMask {
  Eigen::VectorXd values;
  int scenario = 1;
  int n1 = 0;
  int n2 = 0;
  int shift = 0;
};

/// Per-pixel weight for clip 1 in a vertical-split composite.
struct SpatialMask {
  Eigen::MatrixXd values;  // H x W
  int split_column = 0;
  int half_width = 1;
};

enum class AugKind { kNone, kFreeze, kMixUp, kCutMixWindow, kCutMixView };

const char* to_string(AugKind kind);
AugKind aug_kind_from_string(const std::string& name);

/// Parameters sampled for one augmentation step. Fields that do not apply to
/// the step's kind keep their defaults.
struct AugParams {
  std::vector<std::pair<int, int>> segments;  // freeze (r, m), 0-based
  int shift = 0;                              // mixup / cutmix window r
  int scenario = 0;
  bool hard = false;
  int delta = 0;
  int fit = 0;  // 0 = natural length
  std::string note;
};

/// Provenance of one augmentation step.
struct AugRecord {
  AugKind kind = AugKind::kNone;
  std::vector<std::string> sources;
  AugParams params;
  std::uint64_t seed = 0;
};

/// Output of one augmentation step on a given scalar type.
template <typename Scalar>
struct Augmented {
  Clip<Scalar> clip;
  LabelTrack labels;
  AugRecord record;
};

}  // namespace volaug

#endif  // VOLAUG_TYPES_HPP_
