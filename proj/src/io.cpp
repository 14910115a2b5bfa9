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

#include "volaug/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace volaug {

namespace {

static_assert(std::endian::native == std::endian::little,
              "VVOL encoding assumes a little-endian host");

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return v;
}

template <typename Scalar>
ClipVolume decode_payload(const VvolHeader& h, std::string_view payload, std::string id) {
  Clip<Scalar> clip(static_cast<int>(h.frames), static_cast<int>(h.height),
                    static_cast<int>(h.width), static_cast<int>(h.channels), std::move(id));
  std::memcpy(clip.frames.data(), payload.data(), payload.size());
  return clip;
}

}  // namespace

std::string encode_vvol(const ClipVolume& clip) {
  return std::visit(
      [](const auto& c) {
        using Scalar = typename std::decay_t<decltype(c.frames)>::Scalar;
        const std::size_t payload = static_cast<std::size_t>(c.frames.size()) * sizeof(Scalar);
        std::string out;
        out.reserve(kVvolHeaderSize + payload);
        out.append(kVvolMagic, 4);
        out.push_back(static_cast<char>(kVvolVersion));
        out.push_back(static_cast<char>(c.dtype()));
        put_u32(out, static_cast<std::uint32_t>(c.num_frames()));
        put_u32(out, static_cast<std::uint32_t>(c.height));
        put_u32(out, static_cast<std::uint32_t>(c.width));
        put_u32(out, static_cast<std::uint32_t>(c.channels));
        out.append(reinterpret_cast<const char*>(c.frames.data()), payload);
        return out;
      },
      clip);
}

VvolHeader decode_vvol_header(std::string_view bytes) {
  if (bytes.size() < kVvolHeaderSize) throw IoError("truncated VVOL header");
  if (std::memcmp(bytes.data(), kVvolMagic, 4) != 0) throw IoError("bad VVOL magic");
  if (static_cast<std::uint8_t>(bytes[4]) != kVvolVersion) {
    throw IoError("unsupported VVOL version " + std::to_string(static_cast<int>(bytes[4])));
  }
  VvolHeader h;
  const auto code = static_cast<std::uint8_t>(bytes[5]);
  if (code > 1) throw IoError("unknown VVOL dtype code " + std::to_string(code));
  h.dtype = static_cast<DType>(code);
  h.frames = get_u32(bytes, 6);
  h.height = get_u32(bytes, 10);
  h.width = get_u32(bytes, 14);
  h.channels = get_u32(bytes, 18);
  return h;
}

ClipVolume decode_vvol(std::string_view bytes, std::string id) {
  const VvolHeader h = decode_vvol_header(bytes);
  if (h.frames < 2 || h.height < 1 || h.width < 1 || (h.channels != 1 && h.channels != 3)) {
    throw IoError("VVOL header violates clip invariants");
  }
  const std::size_t elem = h.dtype == DType::kU8 ? 1 : 4;
  const std::size_t expected = static_cast<std::size_t>(h.frames) * h.height * h.width *
                               h.channels * elem;
  const std::string_view payload = bytes.substr(kVvolHeaderSize);
  if (payload.size() != expected) {
    throw IoError("VVOL payload has " + std::to_string(payload.size()) + " bytes, expected " +
                  std::to_string(expected));
  }
  ClipVolume clip = h.dtype == DType::kU8 ? decode_payload<std::uint8_t>(h, payload, std::move(id))
                                          : decode_payload<float>(h, payload, std::move(id));
  try {
    validate(clip);
  } catch (const ParameterError& e) {
    throw IoError(std::string("invalid VVOL contents: ") + e.what());
  }
  return clip;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

ClipVolume read_vvol(const std::filesystem::path& path) {
  try {
    return decode_vvol(read_file(path), path.stem().string());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_vvol(const std::filesystem::path& path, const ClipVolume& clip) {
  write_file(path, encode_vvol(clip));
}

namespace {

nlohmann::json matrix_rows(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(t, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_matrix(const nlohmann::json& rows, Eigen::Index cols, const char* what) {
  if (!rows.is_array()) throw IoError(std::string(what) + " must be an array of rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& row = rows[t];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw IoError(std::string(what) + " row " + std::to_string(t) + " has wrong length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(static_cast<Eigen::Index>(t), k) = row[k].get<double>();
  }
  return m;
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

nlohmann::json label_track_to_json(const LabelTrack& labels) {
  return {{"num_classes", labels.cols()}, {"weights", matrix_rows(labels)}};
}

LabelTrack label_track_from_json(const nlohmann::json& j) {
  try {
    const auto k = j.at("num_classes").get<Eigen::Index>();
    if (k < 1) throw IoError("num_classes must be >= 1");
    LabelTrack labels = rows_matrix(j.at("weights"), k, "weights");
    if (labels.size() > 0 && !((labels.array() >= 0.0).all() && (labels.array() <= 1.0).all())) {
      throw IoError("label weights must lie in [0, 1]");
    }
    return labels;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed label track: ") + e.what());
  }
}

LabelTrack read_label_track(const std::filesystem::path& path) {
  try {
    return label_track_from_json(parse_json_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_label_track(const std::filesystem::path& path, const LabelTrack& labels) {
  write_file(path, dump_canonical(label_track_to_json(labels)));
}

nlohmann::json prediction_to_json(const PredictionTrack& scores) {
  return {{"scores", matrix_rows(scores)}};
}

PredictionTrack prediction_from_json(const nlohmann::json& j) {
  try {
    const auto& rows = j.at("scores");
    const Eigen::Index cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.at(0).size());
    return rows_matrix(rows, cols, "scores");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed prediction track: ") + e.what());
  }
}

PredictionTrack read_prediction(const std::filesystem::path& path) {
  try {
    return prediction_from_json(parse_json_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_prediction(const std::filesystem::path& path, const PredictionTrack& scores) {
  write_file(path, dump_canonical(prediction_to_json(scores)));
}

nlohmann::json aug_record_to_json(const AugRecord& record) {
  nlohmann::json params = nlohmann::json::object();
  const AugParams& p = record.params;
  switch (record.kind) {
    case AugKind::kFreeze: {
      nlohmann::json segments = nlohmann::json::array();
      for (const auto& [r, m] : p.segments) segments.push_back({{"r", r}, {"m", m}});
      params["segments"] = std::move(segments);
      break;
    }
    case AugKind::kMixUp:
      params = {{"r", p.shift}, {"scenario", p.scenario}, {"hard", p.hard}, {"fit", p.fit}};
      break;
    case AugKind::kCutMixWindow:
      params = {{"r", p.shift}, {"scenario", p.scenario}, {"delta", p.delta}, {"fit", p.fit}};
      break;
    case AugKind::kCutMixView:
      params = {{"delta", p.delta}};
      break;
    case AugKind::kNone:
      break;
  }
  if (!p.note.empty()) params["note"] = p.note;
  return {{"kind", to_string(record.kind)},
          {"sources", record.sources},
          {"params", std::move(params)},
          {"seed", record.seed}};
}

AugRecord aug_record_from_json(const nlohmann::json& j) {
  try {
    AugRecord record;
    record.kind = aug_kind_from_string(j.at("kind").get<std::string>());
    record.sources = j.at("sources").get<std::vector<std::string>>();
    record.seed = j.at("seed").get<std::uint64_t>();
    const auto& params = j.at("params");
    AugParams& p = record.params;
    if (params.contains("segments")) {
      for (const auto& s : params["segments"]) p.segments.emplace_back(s.at("r"), s.at("m"));
    }
    p.shift = params.value("r", 0);
    p.scenario = params.value("scenario", 0);
    p.hard = params.value("hard", false);
    p.delta = params.value("delta", 0);
    p.fit = params.value("fit", 0);
    p.note = params.value("note", std::string{});
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed augmentation record: ") + e.what());
  } catch (const ParameterError& e) {
    throw IoError(std::string("malformed augmentation record: ") + e.what());
  }
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump() + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

}  // namespace volaug
