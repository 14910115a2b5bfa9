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

#include "volaug/policy.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace volaug {

namespace {

template <typename Scalar>
StepResult to_step(Augmented<Scalar>&& out) {
  return StepResult{ClipVolume(std::move(out.clip)), std::move(out.labels),
                    std::move(out.record)};
}

template <typename Fn>
StepResult visit_pair(const ClipVolume& clip1, const ClipVolume& clip2, Fn&& fn) {
  if (clip1.index() != clip2.index()) throw ParameterError("incompatible clip geometry");
  return std::visit(
      [&](const auto& a) -> StepResult {
        using C = std::decay_t<decltype(a)>;
        return to_step(fn(a, std::get<C>(clip2)));
      },
      clip1);
}

}  // namespace

StepResult run_freeze(const ClipVolume& clip, const LabelTrack& labels,
                      std::span<const FreezeSegment> segments, const FreezeOptions& options) {
  return std::visit(
      [&](const auto& c) { return to_step(freeze_multi(c, labels, segments, options)); }, clip);
}

StepResult run_mixup(const ClipVolume& clip1, const LabelTrack& labels1,
                     const ClipVolume& clip2, const LabelTrack& labels2, int shift,
                     const MixUpOptions& options) {
  return visit_pair(clip1, clip2, [&](const auto& a, const auto& b) {
    return mixup(a, labels1, b, labels2, shift, options);
  });
}

StepResult run_cutmix(const ClipVolume& clip1, const LabelTrack& labels1,
                      const ClipVolume& clip2, const LabelTrack& labels2,
                      const CutMixParams& params, int fit) {
  return visit_pair(clip1, clip2, [&](const auto& a, const auto& b) {
    if (params.mode == CutMixMode::kView) return cutmix_view(a, labels1, b, labels2, params.delta);
    return cutmix_window(a, labels1, b, labels2, params.shift, params.delta, fit);
  });
}

StepResult replay(const AugRecord& record, const ClipVolume& clip, const LabelTrack& labels,
                  const ClipVolume* partner, const LabelTrack* partner_labels,
                  const FreezeOptions& freeze_options) {
  const AugParams& p = record.params;
  const bool needs_partner = record.kind == AugKind::kMixUp ||
                             record.kind == AugKind::kCutMixWindow ||
                             record.kind == AugKind::kCutMixView;
  if (needs_partner && (partner == nullptr || partner_labels == nullptr)) {
    throw ParameterError(std::string(to_string(record.kind)) + " replay needs a partner clip");
  }
  StepResult result;
  switch (record.kind) {
    case AugKind::kNone:
      result = StepResult{clip, labels, {}};
      break;
    case AugKind::kFreeze: {
      std::vector<FreezeSegment> segments;
      for (const auto& [r, m] : p.segments) segments.push_back({r, m});
      result = run_freeze(clip, labels, segments, freeze_options);
      break;
    }
    case AugKind::kMixUp:
      result = run_mixup(clip, labels, *partner, *partner_labels, p.shift,
                         MixUpOptions{p.hard, p.fit});
      break;
    case AugKind::kCutMixWindow:
      result = run_cutmix(clip, labels, *partner, *partner_labels,
                          CutMixParams{CutMixMode::kWindow, p.shift, p.delta}, p.fit);
      break;
    case AugKind::kCutMixView:
      result = run_cutmix(clip, labels, *partner, *partner_labels,
                          CutMixParams{CutMixMode::kView, 0, p.delta});
      break;
  }
  result.record = record;
  return result;
}

namespace {

AugRecord skipped(AugKind wanted, const std::string& id, std::uint64_t seed,
                  const std::string& why) {
  AugRecord record;
  record.kind = AugKind::kNone;
  record.sources = {id};
  record.seed = seed;
  record.params.note = std::string(to_string(wanted)) + " skipped: " + why;
  return record;
}

int width_of(const ClipVolume& clip) {
  return std::visit([](const auto& c) { return c.width; }, clip);
}

std::size_t pick_partner(std::size_t self, std::size_t batch_size, Rng& rng) {
  const auto draw = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(batch_size) - 2));
  return draw >= self ? draw + 1 : draw;
}

void commit(Sample& sample, StepResult&& step) {
  sample.clip = std::move(step.clip);
  sample.labels = std::move(step.labels);
  step.record.seed = sample.seed;
  sample.history.push_back(std::move(step.record));
}

}  // namespace

JointResult joint_policy(std::vector<Sample> batch, const PolicyProbs& probs, Rng& batch_rng,
                         const AugmentConfig& config) {
  for (double p : {probs.freeze, probs.mixup, probs.cutmix}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("policy probabilities must lie in [0, 1]");
  }
  JointResult result;
  result.applied = {batch_rng.bernoulli(probs.freeze), batch_rng.bernoulli(probs.mixup),
                    batch_rng.bernoulli(probs.cutmix)};

  std::vector<Rng> rngs;
  rngs.reserve(batch.size());
  for (const Sample& s : batch) rngs.emplace_back(s.seed);

  if (result.applied[0]) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Sample& s = batch[i];
      const int n = num_frames_of(s.clip);
      if (n < 3) {
        s.history.push_back(skipped(AugKind::kFreeze, s.id, s.seed, "clip too short to freeze"));
        continue;
      }
      std::vector<FreezeSegment> segments;
      for (int k = 0; k < config.freeze_segments; ++k) {
        segments.push_back(sample_freeze_params(n, rngs[i]));
      }
      commit(s, run_freeze(s.clip, s.labels, segments, config.freeze));
      s.history.back().sources = {s.id};
    }
  }

  const auto two_clip_stage = [&](AugKind kind, auto&& run) {
    if (batch.size() < 2) {
      for (Sample& s : batch) {
        s.history.push_back(skipped(kind, s.id, s.seed, "batch of size 1 has no partner"));
      }
      return;
    }
    // Every partner is read in its pre-stage state, so results are held back
    // until the whole stage has run.
    std::vector<std::optional<StepResult>> steps(batch.size());
    std::vector<std::string> errors(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const std::size_t j = pick_partner(i, batch.size(), rngs[i]);
      const Sample& a = batch[i];
      const Sample& b = batch[j];
      try {
        steps[i] = run(a, b, rngs[i]);
        steps[i]->record.sources = {a.id, b.id};
      } catch (const ParameterError& e) {
        errors[i] = e.what();
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (steps[i]) {
        commit(batch[i], std::move(*steps[i]));
      } else {
        batch[i].history.push_back(skipped(kind, batch[i].id, batch[i].seed, errors[i]));
      }
    }
  };

  if (result.applied[1]) {
    two_clip_stage(AugKind::kMixUp, [&](const Sample& a, const Sample& b, Rng& rng) {
      const int shift = sample_mixup_shift(num_frames_of(a.clip), num_frames_of(b.clip), rng);
      return run_mixup(a.clip, a.labels, b.clip, b.labels, shift,
                       MixUpOptions{config.hard_mixup, config.fit});
    });
  }
  if (result.applied[2]) {
    const AugKind kind = config.cutmix_mode == CutMixMode::kView ? AugKind::kCutMixView
                                                                 : AugKind::kCutMixWindow;
    two_clip_stage(kind, [&](const Sample& a, const Sample& b, Rng& rng) {
      const CutMixParams params =
          sample_cutmix_params(num_frames_of(a.clip), num_frames_of(b.clip), width_of(a.clip),
                               config.cutmix_mode, config.delta, rng);
      return run_cutmix(a.clip, a.labels, b.clip, b.labels, params, config.fit);
    });
  }

  result.samples = std::move(batch);
  return result;
}

PredictionTrack ensemble(std::span<const PredictionTrack> predictions, EnsembleMode mode) {
  if (predictions.empty()) throw ParameterError("ensemble needs at least one prediction track");
  const auto rows = predictions.front().rows();
  const auto cols = predictions.front().cols();
  for (const PredictionTrack& p : predictions) {
    if (p.rows() != rows || p.cols() != cols) {
      throw ParameterError("prediction track shapes differ");
    }
  }
  const double count = static_cast<double>(predictions.size());
  if (mode == EnsembleMode::kGeometric) {
    PredictionTrack product = PredictionTrack::Ones(rows, cols);
    for (const PredictionTrack& p : predictions) product.array() *= p.array();
    return product.array().pow(1.0 / count).matrix();
  }
  PredictionTrack sum = PredictionTrack::Zero(rows, cols);
  for (const PredictionTrack& p : predictions) sum += p;
  return sum / count;
}

std::string history_kind(const std::vector<AugRecord>& history) {
  std::string kind;
  for (const AugRecord& r : history) {
    if (r.kind == AugKind::kNone) continue;
    if (!kind.empty()) kind += '+';
    kind += to_string(r.kind);
  }
  return kind.empty() ? "none" : kind;
}

}  // namespace volaug
