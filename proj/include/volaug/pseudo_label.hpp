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

#ifndef VOLAUG_PSEUDO_LABEL_HPP_
#define VOLAUG_PSEUDO_LABEL_HPP_

#include "volaug/types.hpp"

namespace volaug {

/// Replicates a clip-level class onto every frame: T rows one-hot at
/// `class_index`.
LabelTrack pseudo_label(int clip_length, int class_index, int num_classes);

/// Per-row label mass.
inline Eigen::VectorXd label_mass(const LabelTrack& labels) {
  return labels.rowwise().sum();
}

}  // namespace volaug

#endif  // VOLAUG_PSEUDO_LABEL_HPP_
