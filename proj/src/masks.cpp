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

#include "volaug/masks.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace volaug {

double truncate01(double x) {
  if (!std::isfinite(x)) throw ParameterError("non-finite mask value");
  if (x >= 1.0) return 1.0;
  if (x < 0.0) return 0.0;
  return x;
}

double mask_area(const SpatialMask& mask) {
  const Eigen::MatrixXd& m = mask.values;
  if (m.size() == 0) return 0.0;
  // Fixed row-major summation order; Eigen's vectorized reductions would make
  // the low bits depend on the SIMD width.
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) sum += m(i, j);
  }
  return sum / static_cast<double>(m.size());
}

namespace {

void check_alpha_args(int n1, int n2, int shift) {
  if (n1 < 2 || n2 < 2) {
    throw ParameterError("clip lengths must be >= 2 (got n1=" + std::to_string(n1) +
                         ", n2=" + std::to_string(n2) + ")");
  }
  if (shift < 0) throw ParameterError("shift must be non-negative");
  if (shift >= n1) throw ParameterError("no overlap");
}

}  // namespace

double alpha_at(int n1, int n2, int shift, double t) {
  if (is_scenario1(n1, n2, shift)) {
    return truncate01((n1 - t) / static_cast<double>(n1 - shift));
  }
  return truncate01(std::abs(n2 + 2.0 * shift - 2.0 * t) / n2);
}

AlphaMask alpha_mask(int n1, int n2, int shift) {
  check_alpha_args(n1, n2, shift);
  AlphaMask mask;
  mask.n1 = n1;
  mask.n2 = n2;
  mask.shift = shift;
  mask.scenario = is_scenario1(n1, n2, shift) ? 1 : 2;
  const int length = mixed_length(n1, n2, shift);
  mask.values.resize(length);
  for (int t = 0; t < length; ++t) mask.values[t] = alpha_at(n1, n2, shift, t);
  return mask;
}

AlphaMask alpha_mask_at_resolution(int n1, int n2, int shift, int out_length) {
  check_alpha_args(n1, n2, shift);
  if (out_length < 2) throw ParameterError("output resolution must be >= 2");
  AlphaMask mask;
  mask.n1 = n1;
  mask.n2 = n2;
  mask.shift = shift;
  mask.scenario = is_scenario1(n1, n2, shift) ? 1 : 2;
  const int length = mixed_length(n1, n2, shift);
  mask.values.resize(out_length);
  for (int i = 0; i < out_length; ++i) {
    // Integer endpoints hit exactly so L_out == L reproduces alpha_mask.
    const double t = static_cast<double>(i) * (length - 1) / (out_length - 1);
    mask.values[i] = alpha_at(n1, n2, shift, t);
  }
  return mask;
}

AlphaMask harden(AlphaMask mask) {
  mask.values = (mask.values.array() >= 0.5).cast<double>();
  return mask;
}

Eigen::VectorXd spatial_mask_row(int width, int split_column, int delta) {
  if (width < 1) throw ParameterError("mask width must be >= 1");
  if (split_column < 0 || split_column > width) {
    throw ParameterError("split column out of range");
  }
  if (delta < 1 || delta > width / 4) {
    throw ParameterError("delta must lie in [1, W/4] (got " + std::to_string(delta) +
                         " for W=" + std::to_string(width) + ")");
  }
  Eigen::VectorXd row(width);
  if (split_column == 0) return row.setZero();
  if (split_column == width) return row.setOnes();
  for (int j = 0; j < width; ++j) {
    if (j < split_column - delta) {
      row[j] = 1.0;
    } else if (j >= split_column + delta) {
      row[j] = 0.0;
    } else {
      row[j] = static_cast<double>(split_column + delta - j) / (2.0 * delta);
    }
  }
  return row;
}

SpatialMask spatial_mask(int height, int width, int split_column, int delta) {
  if (height < 1) throw ParameterError("mask height must be >= 1");
  const Eigen::VectorXd row = spatial_mask_row(width, split_column, delta);
  SpatialMask mask;
  mask.values = row.transpose().replicate(height, 1);
  mask.split_column = split_column;
  mask.half_width = delta;
  return mask;
}

int window_split_column(int width, double alpha) {
  const int column = static_cast<int>(std::floor(width * alpha + 0.5));
  return std::clamp(column, 0, width);
}

int default_delta(int width) {
  const int delta = std::max(1, static_cast<int>(std::lround(0.05 * width)));
  return std::min(delta, std::max(1, width / 4));
}

int view_pan_offset(int t, int num_frames, int width) {
  assert(num_frames >= 2);
  const long long half = width / 2;
  const long long denom = num_frames - 1;
  const int offset = static_cast<int>((2LL * t * half + denom) / (2LL * denom));
  assert(offset >= 0 && offset <= half);
  return offset;
}

}  // namespace volaug
