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

#include "volaug/pseudo_label.hpp"

namespace volaug {

LabelTrack pseudo_label(int clip_length, int class_index, int num_classes) {
  if (clip_length < 1) throw ParameterError("clip length must be >= 1");
  if (num_classes < 1) throw ParameterError("number of classes must be >= 1");
  if (class_index < 0 || class_index >= num_classes) {
    throw ParameterError("class index out of range");
  }
  LabelTrack labels = LabelTrack::Zero(clip_length, num_classes);
  labels.col(class_index).setOnes();
  return labels;
}

}  // namespace volaug
