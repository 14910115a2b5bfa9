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

#include <random>

#include <doctest.h>

#include "reference.hpp"
#include "test_util.hpp"
#include "volaug/cutmix.hpp"
#include "volaug/pseudo_label.hpp"

using namespace volaug;

TEST_CASE("window cutmix label at a half-way frame") {
  std::mt19937_64 gen(1);
  const auto v1 = testutil::random_clip<std::uint8_t>(gen, 8, 2, 8, 1, "a");
  const auto v2 = testutil::random_clip<std::uint8_t>(gen, 6, 2, 8, 1, "b");
  const auto out = cutmix_window(v1, pseudo_label(8, 0, 2), v2, pseudo_label(6, 1, 2), 4, 1);
  CHECK(out.clip.num_frames() == 10);
  CHECK(out.labels(6, 0) == 0.5625);
  CHECK(out.labels(6, 1) == 0.4375);
  // columns 0..3 come from clip 1, 5..7 from clip 2
  for (int h = 0; h < 2; ++h) {
    for (int w = 0; w < 4; ++w) CHECK(out.clip.at(6, h, w, 0) == v1.at(6, h, w, 0));
    for (int w = 5; w < 8; ++w) CHECK(out.clip.at(6, h, w, 0) == v2.at(2, h, w, 0));
  }
  CHECK(out.record.kind == AugKind::kCutMixWindow);
  CHECK(out.record.params.delta == 1);
  // frames before the shift are pure clip 1, after clip 1 ends pure clip 2
  CHECK((out.clip.frames.row(0) == v1.frames.row(0)).all());
  CHECK((out.clip.frames.row(9) == v2.frames.row(5)).all());
}

TEST_CASE("view cutmix pans across both clips") {
  std::vector<int> pans;
  for (int t = 0; t < 4; ++t) pans.push_back(view_pan_offset(t, 4, 8));
  CHECK(pans == std::vector<int>{0, 1, 3, 4});

  ClipU8 a(4, 1, 8, 1, "a"), b(4, 1, 8, 1, "b");
  for (int t = 0; t < 4; ++t)
    for (int w = 0; w < 8; ++w) {
      a.at(t, 0, w, 0) = static_cast<std::uint8_t>(10 + w);
      b.at(t, 0, w, 0) = static_cast<std::uint8_t>(100 + w);
    }
  const auto out = cutmix_view(a, pseudo_label(4, 0, 2), b, pseudo_label(4, 1, 2), 1);
  // t=0: left shows a[0..2], right shows b[1..3]
  CHECK(out.clip.at(0, 0, 0, 0) == 10);
  CHECK(out.clip.at(0, 0, 2, 0) == 12);
  CHECK(out.clip.at(0, 0, 5, 0) == 101);
  CHECK(out.clip.at(0, 0, 7, 0) == 103);
  // t=3: pan 4, left shows a[4..6], right shows b[5..7]
  CHECK(out.clip.at(3, 0, 0, 0) == 14);
  CHECK(out.clip.at(3, 0, 7, 0) == 107);
  CHECK(out.labels(2, 0) == 0.5);
  CHECK(out.labels(2, 1) == 0.5);

  const auto reference = ref::cutmix_view(a, pseudo_label(4, 0, 2), b, pseudo_label(4, 1, 2), 1);
  CHECK((out.clip.frames == reference.clip.frames).all());
}

TEST_CASE("view cutmix preconditions") {
  const auto a = testutil::indexed_clip(4, 1, 8, 1);
  const auto b = testutil::indexed_clip(5, 1, 8, 1);
  CHECK_THROWS_WITH_AS(cutmix_view(a, pseudo_label(4, 0, 2), b, pseudo_label(5, 0, 2), 1),
                       "transient view requires equal lengths", ParameterError);
  const auto odd = testutil::indexed_clip(4, 1, 9, 1);
  CHECK_THROWS_AS(cutmix_view(odd, pseudo_label(4, 0, 2), odd, pseudo_label(4, 0, 2), 1),
                  ParameterError);
  CHECK_THROWS_AS(cutmix_view(a, pseudo_label(4, 0, 2), a, pseudo_label(4, 0, 2), 3),
                  ParameterError);
}

TEST_CASE("cutmix matches the naive reference") {
  std::mt19937_64 gen(41);
  for (int i = 0; i < 200; ++i) {
    const int n1 = testutil::uniform(gen, 2, 8), n2 = testutil::uniform(gen, 2, 8);
    const int H = testutil::uniform(gen, 1, 8);
    const int W = 2 * testutil::uniform(gen, 2, 8);
    const int C = testutil::uniform(gen, 0, 1) ? 3 : 1;
    const int delta = testutil::uniform(gen, 1, W / 4);
    const int r = testutil::uniform(gen, 0, n1 - 1);
    const LabelTrack l1 = pseudo_label(n1, 1, 4), l2 = pseudo_label(n2, 3, 4);
    const auto v1 = testutil::random_clip<std::uint8_t>(gen, n1, H, W, C);
    const auto v2 = testutil::random_clip<std::uint8_t>(gen, n2, H, W, C);
    const auto out = cutmix_window(v1, l1, v2, l2, r, delta);
    const auto want = ref::cutmix_window(v1, l1, v2, l2, r, delta);
    CHECK((out.clip.frames == want.clip.frames).all());
    CHECK(out.labels == want.labels);
    CHECK(((label_mass(out.labels).array() - 1.0).abs() <= 1e-9).all());

    const auto v3 = testutil::random_clip<float>(gen, n1, H, W, C);
    const auto v4 = testutil::random_clip<float>(gen, n1, H, W, C);
    const LabelTrack l3 = pseudo_label(n1, 3, 4);
    const auto view = cutmix_view(v3, l1, v4, l3, delta);
    const auto view_want = ref::cutmix_view(v3, l1, v4, l3, delta);
    CHECK((view.clip.frames == view_want.clip.frames).all());
    CHECK(view.labels == view_want.labels);
  }
}

TEST_CASE("cutmix parameter sampling") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const CutMixParams p = sample_cutmix_params(8, 5, 112, CutMixMode::kWindow, 0, rng);
    CHECK(p.delta == default_delta(112));
    CHECK(p.shift >= 0);
    CHECK(p.shift < 8);
  }
  CHECK(sample_cutmix_params(8, 8, 16, CutMixMode::kView, 2, rng).delta == 2);
}
