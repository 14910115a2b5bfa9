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

#include "volaug/eval.hpp"

#include <algorithm>
#include <numeric>

namespace volaug {

std::optional<double> average_precision(std::span<const double> scores,
                                        std::span<const double> truth) {
  if (scores.size() != truth.size()) throw ParameterError("scores and truth lengths differ");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double hits = 0.0;
  double precision_sum = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (truth[order[rank]] >= kPositiveThreshold) {
      hits += 1.0;
      precision_sum += hits / static_cast<double>(rank + 1);
    }
  }
  if (hits == 0.0) return std::nullopt;
  return precision_sum / hits;
}

EvalReport evaluate_pooled(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                           const Eigen::VectorXd* class_weights) {
  if (scores.rows() != truth.rows() || scores.cols() != truth.cols()) {
    throw ParameterError("score and truth shapes differ");
  }
  const Eigen::Index classes = scores.cols();
  if (class_weights && class_weights->size() != classes) {
    throw ParameterError("class weight vector has " + std::to_string(class_weights->size()) +
                         " entries for " + std::to_string(classes) + " classes");
  }
  EvalReport report;
  report.num_frames = static_cast<long>(scores.rows());
  report.per_class_ap.resize(static_cast<std::size_t>(classes));
  // Column-major copies so each class is a contiguous span.
  const Eigen::MatrixXd s = scores;
  const Eigen::MatrixXd g = truth;
  double weighted = 0.0;
  double weight_total = 0.0;
  for (Eigen::Index k = 0; k < classes; ++k) {
    const std::span<const double> col_s(s.col(k).data(), static_cast<std::size_t>(s.rows()));
    const std::span<const double> col_g(g.col(k).data(), static_cast<std::size_t>(g.rows()));
    const std::optional<double> ap = average_precision(col_s, col_g);
    if (!ap) continue;
    report.per_class_ap[static_cast<std::size_t>(k)] = 100.0 * *ap;
    const double w = class_weights ? (*class_weights)[k] : 1.0;
    weighted += w * *ap;
    weight_total += w;
  }
  if (weight_total > 0.0) report.map = 100.0 * weighted / weight_total;
  return report;
}

namespace {

void check_videos(std::span<const PredictionTrack> preds, std::span<const LabelTrack> truths,
                  std::span<const std::string> ids) {
  if (preds.size() != truths.size()) {
    throw ParameterError("got " + std::to_string(preds.size()) + " prediction tracks for " +
                         std::to_string(truths.size()) + " truth tracks");
  }
  for (std::size_t v = 0; v < preds.size(); ++v) {
    const bool ok = preds[v].rows() == truths[v].rows() && preds[v].cols() == truths[v].cols() &&
                    preds[v].cols() == preds.front().cols();
    if (!ok) {
      const std::string name = v < ids.size() ? ids[v] : "#" + std::to_string(v);
      throw ParameterError("shape mismatch for video " + name);
    }
  }
}

/// Stacks the selected frames (per-video index lists) of every video.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> pool(
    std::span<const PredictionTrack> preds, std::span<const LabelTrack> truths,
    const std::vector<std::vector<int>>& frames) {
  long total = 0;
  for (const auto& f : frames) total += static_cast<long>(f.size());
  const Eigen::Index classes = preds.empty() ? 0 : preds.front().cols();
  Eigen::MatrixXd s(total, classes);
  Eigen::MatrixXd g(total, classes);
  Eigen::Index row = 0;
  for (std::size_t v = 0; v < preds.size(); ++v) {
    for (int t : frames[v]) {
      s.row(row) = preds[v].row(t);
      g.row(row) = truths[v].row(t);
      ++row;
    }
  }
  return {std::move(s), std::move(g)};
}

std::vector<int> all_frames(Eigen::Index n) {
  std::vector<int> f(static_cast<std::size_t>(n));
  std::iota(f.begin(), f.end(), 0);
  return f;
}

std::optional<double> subset_map(std::span<const PredictionTrack> preds,
                                 std::span<const LabelTrack> truths,
                                 const std::vector<std::vector<int>>& frames) {
  auto [s, g] = pool(preds, truths, frames);
  if (s.rows() == 0) return std::nullopt;
  return evaluate_pooled(s, g).map;
}

}  // namespace

EvalReport map_per_frame(std::span<const PredictionTrack> preds,
                         std::span<const LabelTrack> truths, std::span<const std::string> ids) {
  check_videos(preds, truths, ids);
  std::vector<std::vector<int>> frames;
  for (const auto& p : preds) frames.push_back(all_frames(p.rows()));
  auto [s, g] = pool(preds, truths, frames);
  return evaluate_pooled(s, g);
}

std::vector<int> charades_frame_indices(int num_frames) {
  if (num_frames < 1) throw ParameterError("video has no frames");
  std::vector<int> indices(25);
  for (int i = 0; i < 25; ++i) {
    // round-half-up(i * (T - 1) / 24)
    indices[static_cast<std::size_t>(i)] = (2 * i * (num_frames - 1) + 24) / 48;
  }
  return indices;
}

EvalReport map_charades_protocol(std::span<const PredictionTrack> preds,
                                 std::span<const LabelTrack> truths,
                                 const Eigen::VectorXd& class_weights,
                                 std::span<const std::string> ids) {
  check_videos(preds, truths, ids);
  std::vector<std::vector<int>> frames;
  for (const auto& p : preds) frames.push_back(charades_frame_indices(static_cast<int>(p.rows())));
  auto [s, g] = pool(preds, truths, frames);
  return evaluate_pooled(s, g, &class_weights);
}

std::vector<bool> boundary_frames(const LabelTrack& truth, int dilation) {
  if (dilation < 0) throw ParameterError("dilation must be non-negative");
  const auto n = static_cast<int>(truth.rows());
  const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> active =
      truth.array() >= kPositiveThreshold;
  std::vector<bool> boundary(static_cast<std::size_t>(n), false);
  for (int t = 1; t < n; ++t) {
    if ((active.row(t) == active.row(t - 1)).all()) continue;
    const int lo = std::max(0, t - dilation);
    const int hi = std::min(n - 1, t + dilation);
    for (int u = lo; u <= hi; ++u) boundary[static_cast<std::size_t>(u)] = true;
  }
  return boundary;
}

FramePartition partition_frames(const LabelTrack& truth, int dilation) {
  FramePartition part;
  const std::vector<bool> is_boundary = boundary_frames(truth, dilation);
  for (int t = 0; t < static_cast<int>(truth.rows()); ++t) {
    const auto active = (truth.row(t).array() >= kPositiveThreshold).count();
    (active == 0 ? part.no_action : active == 1 ? part.single_action : part.multi_action)
        .push_back(t);
    (is_boundary[static_cast<std::size_t>(t)] ? part.boundary : part.non_boundary).push_back(t);
  }
  return part;
}

SplitMaps split_statistics(std::span<const PredictionTrack> preds,
                           std::span<const LabelTrack> truths, int dilation,
                           std::span<const std::string> ids) {
  check_videos(preds, truths, ids);
  std::vector<std::vector<int>> single, multi, bound, interior;
  for (const LabelTrack& truth : truths) {
    FramePartition part = partition_frames(truth, dilation);
    single.push_back(std::move(part.single_action));
    multi.push_back(std::move(part.multi_action));
    bound.push_back(std::move(part.boundary));
    interior.push_back(std::move(part.non_boundary));
  }
  SplitMaps maps;
  maps.single_action = subset_map(preds, truths, single);
  maps.multi_action = subset_map(preds, truths, multi);
  maps.boundary = subset_map(preds, truths, bound);
  maps.non_boundary = subset_map(preds, truths, interior);
  return maps;
}

}  // namespace volaug
