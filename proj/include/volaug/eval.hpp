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

#ifndef VOLAUG_EVAL_HPP_
#define VOLAUG_EVAL_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volaug/types.hpp"

namespace volaug {

/// mAP over frame subsets (percent); nullopt when a subset is empty or has
/// no positives.
struct SplitMaps {
  std::optional<double> single_action;
  std::optional<double> multi_action;
  std::optional<double> boundary;
  std::optional<double> non_boundary;
};

struct EvalReport {
  std::optional<double> map;                       // percent
  std::vector<std::optional<double>> per_class_ap;  // percent; nullopt = no positives
  SplitMaps splits;
  long num_frames = 0;
};

/// Truth entries at or above this count as positives.
inline constexpr double kPositiveThreshold = 0.5;

/// Non-interpolated AP: the mean, over positives ranked by descending score
/// (ties in original order), of the precision at each positive's rank.
/// Returns nullopt when truth has no positives.
std::optional<double> average_precision(std::span<const double> scores,
                                        std::span<const double> truth);

/// Per-class AP over the rows of a pooled score/truth pair. With weights, the
/// mean is sum(w_k AP_k) / sum(w_k) over classes with positives.
EvalReport evaluate_pooled(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                           const Eigen::VectorXd* class_weights = nullptr);

/// Pools every frame of every video and averages per-class AP unweighted.
EvalReport map_per_frame(std::span<const PredictionTrack> preds,
                         std::span<const LabelTrack> truths,
                         std::span<const std::string> ids = {});

/// Frames evaluated by the 25-frame protocol: round(i (T - 1) / 24), i = 0..24.
std::vector<int> charades_frame_indices(int num_frames);

/// 25 equally spaced frames per video, pooled, class-weighted mean of AP.
EvalReport map_charades_protocol(std::span<const PredictionTrack> preds,
                                 std::span<const LabelTrack> truths,
                                 const Eigen::VectorXd& class_weights,
                                 std::span<const std::string> ids = {});

/// Frames within `dilation` frames of a change in any class's truth.
std::vector<bool> boundary_frames(const LabelTrack& truth, int dilation);

/// Frame indices of one video by action count and boundary membership.
struct FramePartition {
  std::vector<int> single_action;
  std::vector<int> multi_action;
  std::vector<int> no_action;
  std::vector<int> boundary;
  std::vector<int> non_boundary;
};

FramePartition partition_frames(const LabelTrack& truth, int dilation);

/// mAP on single-action (exactly one active class), multi-action (> 1),
/// boundary and non-boundary frame subsets.
SplitMaps split_statistics(std::span<const PredictionTrack> preds,
                           std::span<const LabelTrack> truths, int dilation = 3,
                           std::span<const std::string> ids = {});

}  // namespace volaug

#endif  // VOLAUG_EVAL_HPP_
