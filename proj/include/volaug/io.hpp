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

#ifndef VOLAUG_IO_HPP_
#define VOLAUG_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "volaug/types.hpp"

namespace volaug {

// VVOL container, little-endian:
//   "VVOL" | u8 version (1) | u8 dtype (0 = u8, 1 = f32) | u32 T, H, W, C |
//   frame data in t, h, w, c order.
inline constexpr char kVvolMagic[4] = {'V', 'V', 'O', 'L'};
inline constexpr std::uint8_t kVvolVersion = 1;
inline constexpr std::size_t kVvolHeaderSize = 4 + 1 + 1 + 4 * 4;

struct VvolHeader {
  DType dtype = DType::kU8;
  std::uint32_t frames = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 0;
};

std::string encode_vvol(const ClipVolume& clip);
/// Throws IoError on a malformed header or truncated payload.
ClipVolume decode_vvol(std::string_view bytes, std::string id = {});
VvolHeader decode_vvol_header(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

ClipVolume read_vvol(const std::filesystem::path& path);
void write_vvol(const std::filesystem::path& path, const ClipVolume& clip);

// Label sidecar: {"num_classes": K, "weights": [[K reals] x T]}.
nlohmann::json label_track_to_json(const LabelTrack& labels);
LabelTrack label_track_from_json(const nlohmann::json& j);
LabelTrack read_label_track(const std::filesystem::path& path);
void write_label_track(const std::filesystem::path& path, const LabelTrack& labels);

// Prediction track: {"scores": [[K reals] x T]}.
nlohmann::json prediction_to_json(const PredictionTrack& scores);
PredictionTrack prediction_from_json(const nlohmann::json& j);
PredictionTrack read_prediction(const std::filesystem::path& path);
void write_prediction(const std::filesystem::path& path, const PredictionTrack& scores);

nlohmann::json aug_record_to_json(const AugRecord& record);
AugRecord aug_record_from_json(const nlohmann::json& j);

/// Serializes JSON with a fixed layout so equal values give equal bytes.
std::string dump_canonical(const nlohmann::json& j);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace volaug

#endif  // VOLAUG_IO_HPP_
