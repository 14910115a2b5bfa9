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

#ifndef VOLAUG_RNG_HPP_
#define VOLAUG_RNG_HPP_

#include <cstdint>
#include <random>

namespace volaug {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Per-sample seed from a run seed and a sample index. Stable across
/// platforms and independent of scheduling.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t sample_index);

/// Seed for an independent stream (e.g. batch-level draws) so that it never
/// aliases a per-sample seed.
std::uint64_t derive_stream_seed(std::uint64_t global_seed, std::uint64_t stream,
                                 std::uint64_t index);

/// Seeded generator with platform-stable draws. std::mt19937_64 output is
/// fully specified by the standard; the distributions in <random> are not, so
/// range reduction is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace volaug

#endif  // VOLAUG_RNG_HPP_
