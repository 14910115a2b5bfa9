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

#include <cmath>
#include <random>

#include <doctest.h>

#include "test_util.hpp"
#include "volaug/policy.hpp"
#include "volaug/pseudo_label.hpp"

using namespace volaug;

namespace {

std::vector<Sample> make_batch(std::mt19937_64& gen, int size, int frames = 8, int width = 8) {
  std::vector<Sample> batch;
  for (int i = 0; i < size; ++i) {
    Sample s;
    s.id = "clip" + std::to_string(i);
    s.clip = testutil::random_clip<std::uint8_t>(gen, frames, 4, width, 3, s.id);
    s.labels = pseudo_label(frames, i % 5, 5);
    s.seed = derive_seed(17, static_cast<std::uint64_t>(i));
    batch.push_back(std::move(s));
  }
  return batch;
}

bool same_clip(const ClipVolume& a, const ClipVolume& b) {
  const auto& x = std::get<ClipU8>(a);
  const auto& y = std::get<ClipU8>(b);
  return x.same_geometry(y) && x.num_frames() == y.num_frames() && (x.frames == y.frames).all();
}

}  // namespace

TEST_CASE("zero probabilities leave the batch untouched") {
  std::mt19937_64 gen(1);
  const auto batch = make_batch(gen, 6);
  Rng rng(5);
  const JointResult out = joint_policy(batch, PolicyProbs{0, 0, 0}, rng);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    CHECK(same_clip(out.samples[i].clip, batch[i].clip));
    CHECK(out.samples[i].labels == batch[i].labels);
    CHECK(out.samples[i].history.empty());
    CHECK(history_kind(out.samples[i].history) == "none");
  }
}

TEST_CASE("freeze-only policy freezes every sample") {
  std::mt19937_64 gen(2);
  const auto batch = make_batch(gen, 5);
  Rng rng(9);
  const JointResult out = joint_policy(batch, PolicyProbs{1, 0, 0}, rng);
  CHECK(out.applied == std::array<bool, 3>{true, false, false});
  for (const Sample& s : out.samples) {
    REQUIRE(s.history.size() == 1);
    CHECK(s.history[0].kind == AugKind::kFreeze);
    CHECK(num_frames_of(s.clip) == 8);
    const Eigen::VectorXd mass = label_mass(s.labels);
    const auto zeros = (mass.array() == 0.0).count();
    CHECK(zeros == s.history[0].params.segments[0].second);
  }
}

TEST_CASE("full policy applies all stages in order") {
  std::mt19937_64 gen(3);
  const auto batch = make_batch(gen, 4);
  Rng rng(11);
  AugmentConfig config;
  config.fit = 8;
  const JointResult out = joint_policy(batch, PolicyProbs{1, 1, 1}, rng, config);
  for (const Sample& s : out.samples) {
    CHECK(history_kind(s.history) == "freeze+mixup+cutmix_window");
    CHECK(num_frames_of(s.clip) == 8);
    CHECK(s.history[1].sources[0] == s.id);
    CHECK(s.history[1].sources[1] != s.id);
    CHECK(((label_mass(s.labels).array()) <= 1.0 + 1e-9).all());
  }
}

TEST_CASE("stage application rate follows the probabilities") {
  std::mt19937_64 gen(4);
  const auto batch = make_batch(gen, 2, 4, 4);
  const int trials = 10000;
  int counts[3] = {0, 0, 0};
  for (int b = 0; b < trials; ++b) {
    Rng rng(derive_stream_seed(123, 1, static_cast<std::uint64_t>(b)));
    const JointResult out = joint_policy(batch, PolicyProbs{0.5, 0.2, 0.8}, rng);
    for (int k = 0; k < 3; ++k) counts[k] += out.applied[k];
  }
  const double p[3] = {0.5, 0.2, 0.8};
  for (int k = 0; k < 3; ++k) {
    const double sd = std::sqrt(p[k] * (1 - p[k]) / trials);
    CHECK(std::abs(counts[k] / static_cast<double>(trials) - p[k]) < 4 * sd);
  }
}

TEST_CASE("a batch of one skips the two-clip stages") {
  std::mt19937_64 gen(5);
  const auto batch = make_batch(gen, 1);
  Rng rng(1);
  const JointResult out = joint_policy(batch, PolicyProbs{0, 1, 1}, rng);
  REQUIRE(out.samples[0].history.size() == 2);
  CHECK(out.samples[0].history[0].kind == AugKind::kNone);
  CHECK(out.samples[0].history[0].params.note.find("no partner") != std::string::npos);
  CHECK(same_clip(out.samples[0].clip, batch[0].clip));
}

TEST_CASE("view cutmix on unequal lengths is recorded as a skip") {
  std::mt19937_64 gen(6);
  auto batch = make_batch(gen, 2);
  batch[1].clip = testutil::random_clip<std::uint8_t>(gen, 6, 4, 8, 3, "short");
  batch[1].labels = pseudo_label(6, 0, 5);
  AugmentConfig config;
  config.cutmix_mode = CutMixMode::kView;
  Rng rng(2);
  const JointResult out = joint_policy(batch, PolicyProbs{0, 0, 1}, rng, config);
  for (const Sample& s : out.samples) {
    REQUIRE(s.history.size() == 1);
    CHECK(s.history[0].kind == AugKind::kNone);
    CHECK(s.history[0].params.note.find("equal lengths") != std::string::npos);
  }
}

TEST_CASE("replay reproduces recorded augmentations bit-exactly") {
  std::mt19937_64 gen(7);
  const auto batch = make_batch(gen, 5);
  for (std::uint64_t b = 0; b < 20; ++b) {
    Rng rng(b);
    AugmentConfig config;
    config.hard_mixup = b % 2 == 0;
    config.cutmix_mode = b % 3 == 0 ? CutMixMode::kView : CutMixMode::kWindow;
    const JointResult out = joint_policy(batch, PolicyProbs{0.5, 0.5, 0.5}, rng, config);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Sample& s = out.samples[i];
      if (s.history.empty()) continue;
      // rebuild the snapshot sequence by replaying each stage on every sample
      std::vector<Sample> state = batch;
      for (std::size_t stage = 0; stage < s.history.size(); ++stage) {
        std::vector<Sample> next = state;
        for (std::size_t k = 0; k < state.size(); ++k) {
          const AugRecord& rec = out.samples[k].history[stage];
          if (rec.kind == AugKind::kNone) continue;
          const Sample* partner = nullptr;
          if (rec.sources.size() == 2) {
            for (const Sample& c : state)
              if (c.id == rec.sources[1]) partner = &c;
          }
          StepResult step = replay(rec, state[k].clip, state[k].labels,
                                   partner ? &partner->clip : nullptr,
                                   partner ? &partner->labels : nullptr);
          next[k].clip = std::move(step.clip);
          next[k].labels = std::move(step.labels);
        }
        state = std::move(next);
      }
      CHECK(same_clip(state[i].clip, s.clip));
      CHECK(state[i].labels == s.labels);
    }
  }
}

TEST_CASE("ensembles") {
  PredictionTrack a(1, 2), b(1, 2);
  a << 0.2, 0.9;
  b << 0.8, 0.1;
  const std::vector<PredictionTrack> both{a, b};
  const PredictionTrack mean = ensemble(both);
  CHECK(mean(0, 0) == doctest::Approx(0.5));
  CHECK(mean(0, 1) == doctest::Approx(0.5));
  const PredictionTrack geo = ensemble(both, EnsembleMode::kGeometric);
  CHECK(geo(0, 0) == doctest::Approx(0.4));
  CHECK(geo(0, 1) == doctest::Approx(0.3));
  CHECK_THROWS_AS(ensemble(std::vector<PredictionTrack>{}), ParameterError);
  CHECK_THROWS_AS(ensemble(std::vector<PredictionTrack>{a, PredictionTrack(2, 2)}), ParameterError);
}

TEST_CASE("policy rejects bad probabilities") {
  std::mt19937_64 gen(8);
  Rng rng(1);
  CHECK_THROWS_AS(joint_policy(make_batch(gen, 2), PolicyProbs{1.5, 0, 0}, rng), ParameterError);
}
