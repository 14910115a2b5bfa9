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

#ifndef VOLAUG_POLICY_HPP_
#define VOLAUG_POLICY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "volaug/cutmix.hpp"
#include "volaug/freeze.hpp"
#include "volaug/mixup.hpp"
#include "volaug/rng.hpp"
#include "volaug/types.hpp"

namespace volaug {

/// A clip travelling through the augmentation policy, with its labels and
/// every step applied so far.
struct Sample {
  ClipVolume clip;
  LabelTrack labels;
  std::string id;
  std::uint64_t seed = 0;
  std::vector<AugRecord> history;
};

struct AugmentConfig {
  int freeze_segments = 1;
  FreezeOptions freeze;
  bool hard_mixup = false;
  int fit = 0;
  CutMixMode cutmix_mode = CutMixMode::kWindow;
  int delta = 0;  // <= 0: default_delta(W)
};

/// Result of one step on runtime-typed clips.
struct StepResult {
  ClipVolume clip;
  LabelTrack labels;
  AugRecord record;
};

StepResult run_freeze(const ClipVolume& clip, const LabelTrack& labels,
                      std::span<const FreezeSegment> segments,
                      const FreezeOptions& options = {});
StepResult run_mixup(const ClipVolume& clip1, const LabelTrack& labels1,
                     const ClipVolume& clip2, const LabelTrack& labels2, int shift,
                     const MixUpOptions& options = {});
StepResult run_cutmix(const ClipVolume& clip1, const LabelTrack& labels1,
                      const ClipVolume& clip2, const LabelTrack& labels2,
                      const CutMixParams& params, int fit = 0);

/// Re-executes a recorded step from its sampled parameters. `partner` is
/// required for two-clip kinds.
StepResult replay(const AugRecord& record, const ClipVolume& clip, const LabelTrack& labels,
                  const ClipVolume* partner = nullptr,
                  const LabelTrack* partner_labels = nullptr,
                  const FreezeOptions& freeze_options = {});

/// Probabilities of applying freeze, mixup and cutmix.
struct PolicyProbs {
  double freeze = 0.5;
  double mixup = 0.5;
  double cutmix = 0.5;
};

struct JointResult {
  std::vector<Sample> samples;
  std::array<bool, 3> applied{};  // freeze, mixup, cutmix
};

/// Joint-training policy on one batch. Each augmentation is switched on for
/// the whole batch with its probability (batch_rng), then applied in the
/// order freeze -> mixup -> cutmix. Per-sample parameters and partners are
/// drawn from each sample's own seed; partners are other members of the
/// batch as they were before the step. Steps that cannot run for a sample
/// (batch of one, geometry mismatch, too-short clip) are recorded as kNone
/// with a note.
JointResult joint_policy(std::vector<Sample> batch, const PolicyProbs& probs, Rng& batch_rng,
                         const AugmentConfig& config = {});

enum class EnsembleMode { kArithmetic, kGeometric };

/// Element-wise mean of equally shaped prediction tracks.
PredictionTrack ensemble(std::span<const PredictionTrack> predictions,
                         EnsembleMode mode = EnsembleMode::kArithmetic);

/// Joined step kinds for output naming, e.g. "freeze+mixup"; "none" when no
/// step ran.
std::string history_kind(const std::vector<AugRecord>& history);

}  // namespace volaug

#endif  // VOLAUG_POLICY_HPP_
