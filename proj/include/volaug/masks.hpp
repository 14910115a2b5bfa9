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

#ifndef VOLAUG_MASKS_HPP_
#define VOLAUG_MASKS_HPP_

#include "volaug/types.hpp"

namespace volaug {

/// Clamps into [0, 1]: 1 for x >= 1, 0 for x < 0. Throws ParameterError
/// ("non-finite mask value") for NaN or infinite input.
double truncate01(double x);

/// Mean of all mask elements.
double mask_area(const SpatialMask& mask);

/// True when the temporal mix transitions clip1 -> clip2 only (n2 + r >= n1).
constexpr bool is_scenario1(int n1, int n2, int shift) { return n2 + shift >= n1; }

/// Length of the blended output: n2 + r in scenario 1, n1 otherwise.
constexpr int mixed_length(int n1, int n2, int shift) {
  return is_scenario1(n1, n2, shift) ? n2 + shift : n1;
}

/// The piecewise-linear blend weight at (possibly fractional) time t.
double alpha_at(int n1, int n2, int shift, double t);

/// Per-frame weight of clip 1 when clip 2 starts `shift` frames later.
/// Requires n1, n2 >= 2 and 0 <= shift < n1.
AlphaMask alpha_mask(int n1, int n2, int shift);

/// alpha_mask resampled onto `out_length` evenly spaced points spanning the
/// natural output length, for blending tensors of another temporal size.
AlphaMask alpha_mask_at_resolution(int n1, int n2, int shift, int out_length);

/// Thresholds at 0.5, ties to clip 1.
AlphaMask harden(AlphaMask mask);

/// Column weights of the vertical-split mask: 1 left of split - delta, 0 from
/// split + delta on, linear across the band. A split at column 0 or W leaves
/// one window empty and yields an all-zeros or all-ones row.
Eigen::VectorXd spatial_mask_row(int width, int split_column, int delta);

/// H x W mask with every row equal to spatial_mask_row. Requires
/// 0 <= split <= W and 1 <= delta <= W / 4.
SpatialMask spatial_mask(int height, int width, int split_column, int delta);

/// round-half-up(W * alpha).
int window_split_column(int width, double alpha);

/// Default transition half-width: max(1, round(0.05 W)), capped at W / 4.
int default_delta(int width);

/// Horizontal pan offset of the transient view at frame t of n:
/// round-half-up(t * (W / 2) / (n - 1)).
int view_pan_offset(int t, int num_frames, int width);

}  // namespace volaug

#endif  // VOLAUG_MASKS_HPP_
