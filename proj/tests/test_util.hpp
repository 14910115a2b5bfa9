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

#ifndef VOLAUG_TESTS_TEST_UTIL_HPP_
#define VOLAUG_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <type_traits>

#include "volaug/pseudo_label.hpp"
#include "volaug/types.hpp"

namespace testutil {

template <typename Scalar>
volaug::Clip<Scalar> random_clip(std::mt19937_64& gen, int T, int H, int W, int C,
                                 std::string id = "clip") {
  volaug::Clip<Scalar> clip(T, H, W, C, std::move(id));
  if constexpr (std::is_same_v<Scalar, std::uint8_t>) {
    std::uniform_int_distribution<int> d(0, 255);
    for (Eigen::Index i = 0; i < clip.frames.size(); ++i) clip.frames.data()[i] = static_cast<std::uint8_t>(d(gen));
  } else {
    std::uniform_real_distribution<float> d(0.0f, 1.0f);
    for (Eigen::Index i = 0; i < clip.frames.size(); ++i) clip.frames.data()[i] = d(gen);
  }
  return clip;
}

/// Clip whose every pixel of frame t equals t (handy to track frame moves).
inline volaug::ClipU8 indexed_clip(int T, int H = 2, int W = 2, int C = 1) {
  volaug::ClipU8 clip(T, H, W, C, "indexed");
  for (int t = 0; t < T; ++t) clip.frames.row(t).setConstant(static_cast<std::uint8_t>(t));
  return clip;
}

inline int uniform(std::mt19937_64& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("volaug_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil

#endif  // VOLAUG_TESTS_TEST_UTIL_HPP_
