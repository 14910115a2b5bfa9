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

#include "volaug/types.hpp"

#include <cmath>

namespace volaug {

DType dtype_of(const ClipVolume& clip) {
  return std::visit([](const auto& c) { return c.dtype(); }, clip);
}

int num_frames_of(const ClipVolume& clip) {
  return std::visit([](const auto& c) { return c.num_frames(); }, clip);
}

const std::string& id_of(const ClipVolume& clip) {
  return std::visit([](const auto& c) -> const std::string& { return c.id; }, clip);
}

void validate(const ClipVolume& clip) {
  std::visit(
      [](const auto& c) {
        if (c.num_frames() < 2) throw ParameterError("clip must have at least 2 frames");
        if (c.height < 1 || c.width < 1) throw ParameterError("clip must have positive H and W");
        if (c.channels != 1 && c.channels != 3) throw ParameterError("channels must be 1 or 3");
        if (c.frame_size() != static_cast<Eigen::Index>(c.height) * c.width * c.channels) {
          throw ParameterError("frame buffer does not match H x W x C");
        }
        using Scalar = typename std::decay_t<decltype(c.frames)>::Scalar;
        if constexpr (std::is_same_v<Scalar, float>) {
          if (c.frames.size() > 0 &&
              !((c.frames >= 0.0f).all() && (c.frames <= 1.0f).all())) {
            throw ParameterError("f32 clip values must lie in [0, 1]");
          }
        }
      },
      clip);
}

const char* to_string(AugKind kind) {
  switch (kind) {
    case AugKind::kNone: return "none";
    case AugKind::kFreeze: return "freeze";
    case AugKind::kMixUp: return "mixup";
    case AugKind::kCutMixWindow: return "cutmix_window";
    case AugKind::kCutMixView: return "cutmix_view";
  }
  return "none";
}

AugKind aug_kind_from_string(const std::string& name) {
  for (AugKind k : {AugKind::kNone, AugKind::kFreeze, AugKind::kMixUp, AugKind::kCutMixWindow,
                    AugKind::kCutMixView}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown augmentation kind '" + name + "'");
}

}  // namespace volaug
