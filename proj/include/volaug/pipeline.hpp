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

#ifndef VOLAUG_PIPELINE_HPP_
#define VOLAUG_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "volaug/policy.hpp"
#include "volaug/types.hpp"

namespace volaug {

/// Frames start + i * stride, i = 0..window-1, with labels sliced the same
/// way. Throws ParameterError("clip too short for window") on overrun.
template <typename Scalar>
Augmented<Scalar> window_sample(const Clip<Scalar>& clip, const LabelTrack& labels, int window,
                                int stride, int start) {
  if (window < 1 || stride < 1 || start < 0) throw ParameterError("invalid window parameters");
  if (labels.rows() != clip.num_frames()) {
    throw ParameterError("label track length does not match clip");
  }
  if (start + static_cast<long long>(window - 1) * stride >= clip.num_frames()) {
    throw ParameterError("clip too short for window");
  }
  Augmented<Scalar> out;
  out.clip = Clip<Scalar>(window, clip.height, clip.width, clip.channels, clip.id);
  out.labels.resize(window, labels.cols());
  for (int i = 0; i < window; ++i) {
    out.clip.frames.row(i) = clip.frames.row(start + i * stride);
    out.labels.row(i) = labels.row(start + i * stride);
  }
  out.record.sources = {clip.id};
  return out;
}

StepResult window_sample(const ClipVolume& clip, const LabelTrack& labels, int window,
                         int stride, int start);

struct ManifestEntry {
  std::string id;
  int class_index = 0;
  std::filesystem::path path;
};

/// JSON lines {"id": string, "class": integer[, "path": string]}. Without a
/// path the clip is <manifest dir>/<id>.vvol; relative paths resolve against
/// the manifest directory. Blank lines are ignored.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);

struct PipelineConfig {
  std::uint64_t seed = 0;
  std::string policy = "joint";  // joint | single:vf | single:vm | single:vc
  PolicyProbs probs;             // used by the joint policy
  int window = 16;               // 0 disables window sampling
  int stride = 5;
  bool random_start = false;
  int fit = 0;
  int delta = 0;  // <= 0: default_delta(W)
  CutMixMode mode = CutMixMode::kWindow;
  bool hard = false;
  int segments = 1;
  int num_classes = 400;
  int batch_size = 8;
  int workers = 1;
  int queue_capacity = 4;  // batches buffered between stages
};

/// Reads the config-file keys; absent keys keep their defaults.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
nlohmann::json pipeline_config_to_json(const PipelineConfig& config);

/// Throws ParameterError on an invalid or self-contradictory configuration.
void validate(const PipelineConfig& config);

/// Probabilities actually applied: one-hot for single:* policies.
PolicyProbs effective_probs(const PipelineConfig& config);

/// Short hash of every setting that affects output bytes (not workers or
/// queue sizes).
std::string config_hash(const PipelineConfig& config);

/// `<id>__<kind>__<seed as 16 hex digits>`, id restricted to [A-Za-z0-9._-].
std::string output_stem(const std::string& id, const std::string& kind, std::uint64_t seed);

struct PipelineSummary {
  std::size_t samples = 0;  // written
  std::size_t skipped = 0;
  std::size_t peak_buffers = 0;
  std::size_t buffer_limit = 0;
  double seconds = 0.0;
  int exit_code = 0;  // 0 ok, 2 completed with skips
};

/// Streams the manifest through reader -> workers -> writer. Writes, per
/// sample, <stem>.vvol, <stem>.labels.json and <stem>.aug.json plus a
/// run_log.json whose sample list is ordered by manifest index. Outputs are
/// independent of worker count.
PipelineSummary run_pipeline(const std::vector<ManifestEntry>& manifest,
                             const PipelineConfig& config, const std::filesystem::path& out_dir);

}  // namespace volaug

#endif  // VOLAUG_PIPELINE_HPP_
