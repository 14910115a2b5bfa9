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

#include "volaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "volaug/bounded_queue.hpp"
#include "volaug/io.hpp"
#include "volaug/pseudo_label.hpp"

namespace volaug {

StepResult window_sample(const ClipVolume& clip, const LabelTrack& labels, int window,
                         int stride, int start) {
  return std::visit(
      [&](const auto& c) {
        auto out = window_sample(c, labels, window, stride, start);
        return StepResult{ClipVolume(std::move(out.clip)), std::move(out.labels),
                          std::move(out.record)};
      },
      clip);
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  const std::filesystem::path base = manifest.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ManifestEntry e;
      e.id = j.at("id").get<std::string>();
      e.class_index = j.at("class").get<int>();
      const std::filesystem::path path =
          j.contains("path") ? std::filesystem::path(j["path"].get<std::string>())
                             : std::filesystem::path(e.id + ".vvol");
      e.path = path.is_absolute() ? path : base / path;
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw IoError(manifest.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return entries;
}

namespace {

CutMixMode mode_from_string(const std::string& s) {
  if (s == "window") return CutMixMode::kWindow;
  if (s == "view") return CutMixMode::kView;
  throw ParameterError("unknown cutmix mode '" + s + "' (expected window or view)");
}

const char* mode_name(CutMixMode mode) {
  return mode == CutMixMode::kView ? "view" : "window";
}

}  // namespace

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    c.policy = j.value("policy", c.policy);
    if (j.contains("probs")) {
      const auto p = j.at("probs").get<std::vector<double>>();
      if (p.size() != 3) throw ParameterError("probs must have three entries");
      c.probs = {p[0], p[1], p[2]};
    }
    c.window = j.value("window", c.window);
    c.stride = j.value("stride", c.stride);
    c.random_start = j.value("random_start", c.random_start);
    c.fit = j.value("fit", c.fit);
    c.delta = j.value("delta", c.delta);
    if (j.contains("mode")) c.mode = mode_from_string(j.at("mode").get<std::string>());
    c.hard = j.value("hard", c.hard);
    c.segments = j.value("segments", c.segments);
    c.num_classes = j.value("num_classes", c.num_classes);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.workers = j.value("workers", c.workers);
    c.queue_capacity = j.value("queue_capacity", c.queue_capacity);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad pipeline config: ") + e.what());
  }
  return c;
}

nlohmann::json pipeline_config_to_json(const PipelineConfig& c) {
  return {{"seed", c.seed},
          {"policy", c.policy},
          {"probs", {c.probs.freeze, c.probs.mixup, c.probs.cutmix}},
          {"window", c.window},
          {"stride", c.stride},
          {"random_start", c.random_start},
          {"fit", c.fit},
          {"delta", c.delta},
          {"mode", mode_name(c.mode)},
          {"hard", c.hard},
          {"segments", c.segments},
          {"num_classes", c.num_classes},
          {"batch_size", c.batch_size},
          {"workers", c.workers},
          {"queue_capacity", c.queue_capacity}};
}

PolicyProbs effective_probs(const PipelineConfig& c) {
  if (c.policy == "joint") return c.probs;
  if (c.policy == "single:vf") return {1.0, 0.0, 0.0};
  if (c.policy == "single:vm") return {0.0, 1.0, 0.0};
  if (c.policy == "single:vc") return {0.0, 0.0, 1.0};
  throw ParameterError("unknown policy '" + c.policy +
                       "' (expected joint, single:vf, single:vm or single:vc)");
}

void validate(const PipelineConfig& c) {
  const PolicyProbs p = effective_probs(c);
  for (double v : {p.freeze, p.mixup, p.cutmix}) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("policy probabilities must lie in [0, 1]");
  }
  if (c.window < 0) throw ParameterError("window must be >= 0");
  if (c.stride < 1) throw ParameterError("stride must be >= 1");
  if (c.window == 1) throw ParameterError("window must be 0 (disabled) or >= 2");
  if (c.fit < 0 || c.fit == 1) throw ParameterError("fit must be 0 (natural) or >= 2");
  if (c.segments < 1) throw ParameterError("segments must be >= 1");
  if (c.num_classes < 1) throw ParameterError("num_classes must be >= 1");
  if (c.batch_size < 1) throw ParameterError("batch_size must be >= 1");
  if (c.workers < 1) throw ParameterError("workers must be >= 1");
  if (c.queue_capacity < 1) throw ParameterError("queue_capacity must be >= 1");
  if (c.mode == CutMixMode::kView && p.cutmix > 0.0) {
    if (c.window == 0 && c.fit == 0) {
      throw ParameterError("view mode needs equal clip lengths: set window or fit");
    }
    if (p.mixup > 0.0 && c.fit == 0) {
      throw ParameterError("view mode after mixup needs fixed lengths: set fit");
    }
  }
}

std::string config_hash(const PipelineConfig& config) {
  nlohmann::json j = pipeline_config_to_json(config);
  j.erase("workers");
  j.erase("queue_capacity");
  const PolicyProbs p = effective_probs(config);
  j["probs"] = {p.freeze, p.mixup, p.cutmix};
  return sha256_hex(dump_canonical(j)).substr(0, 16);
}

std::string output_stem(const std::string& id, const std::string& kind, std::uint64_t seed) {
  std::string safe = id;
  for (char& ch : safe) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '.' || ch == '_' || ch == '-';
    if (!ok) ch = '_';
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(seed));
  return safe + "__" + kind + "__" + hex;
}

namespace {

struct BatchTask {
  std::size_t batch_index = 0;
  std::vector<Sample> samples;
  std::vector<std::size_t> indices;
};

struct WriteItem {
  std::size_t index = 0;
  std::string id;
  std::string kind;
  std::string stem;
  std::string vvol;
  std::string labels;
  std::string record;
  std::string digest;
  std::string labels_digest;
};

struct SkipEntry {
  std::size_t index;
  std::string id;
  std::string message;
};

constexpr std::uint64_t kBatchStream = 1;
constexpr std::uint64_t kStartStream = 2;

class BufferGauge {
 public:
  void add(std::size_t n) {
    const std::size_t now = current_.fetch_add(n) + n;
    std::size_t peak = peak_.load();
    while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
    }
  }
  void release(std::size_t n) { current_.fetch_sub(n); }
  std::size_t peak() const { return peak_.load(); }

 private:
  std::atomic<std::size_t> current_{0};
  std::atomic<std::size_t> peak_{0};
};

Sample load_sample(const ManifestEntry& entry, std::size_t index, const PipelineConfig& config) {
  ClipVolume clip = read_vvol(entry.path);
  LabelTrack labels = pseudo_label(num_frames_of(clip), entry.class_index, config.num_classes);
  if (config.window > 0) {
    int start = 0;
    if (config.random_start) {
      const long long span = num_frames_of(clip) - 1LL - (config.window - 1LL) * config.stride;
      if (span > 0) {
        Rng rng(derive_stream_seed(config.seed, kStartStream, index));
        start = static_cast<int>(rng.uniform_int(0, span));
      }
    }
    StepResult w = window_sample(clip, labels, config.window, config.stride, start);
    clip = std::move(w.clip);
    labels = std::move(w.labels);
  }
  Sample s;
  s.clip = std::move(clip);
  s.labels = std::move(labels);
  s.id = entry.id;
  s.seed = derive_seed(config.seed, index);
  return s;
}

WriteItem encode_sample(const Sample& s, std::size_t index) {
  WriteItem item;
  item.index = index;
  item.id = s.id;
  item.kind = history_kind(s.history);
  item.stem = output_stem(s.id, item.kind, s.seed);
  item.vvol = encode_vvol(s.clip);
  item.labels = dump_canonical(label_track_to_json(s.labels));
  nlohmann::json steps = nlohmann::json::array();
  for (const AugRecord& r : s.history) steps.push_back(aug_record_to_json(r));
  item.record = dump_canonical(
      {{"id", s.id}, {"index", index}, {"seed", s.seed}, {"steps", std::move(steps)}});
  item.digest = sha256_hex(item.vvol);
  item.labels_digest = sha256_hex(item.labels);
  return item;
}

}  // namespace

PipelineSummary run_pipeline(const std::vector<ManifestEntry>& manifest,
                             const PipelineConfig& config, const std::filesystem::path& out_dir) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);

  const PolicyProbs probs = effective_probs(config);
  AugmentConfig aug;
  aug.freeze_segments = config.segments;
  aug.hard_mixup = config.hard;
  aug.fit = config.fit;
  aug.cutmix_mode = config.mode;
  aug.delta = config.delta;

  const auto batch = static_cast<std::size_t>(config.batch_size);
  const auto workers = static_cast<std::size_t>(config.workers);
  const auto queue = static_cast<std::size_t>(config.queue_capacity);
  BoundedQueue<BatchTask> work(queue);
  BoundedQueue<std::vector<WriteItem>> written(queue);
  BufferGauge gauge;

  std::mutex skip_mu;
  std::vector<SkipEntry> skips;
  const auto skip = [&](std::size_t index, const std::string& id, const std::string& why) {
    std::lock_guard lock(skip_mu);
    skips.push_back({index, id, why});
  };

  std::vector<WriteItem> log_items;
  std::string write_error;

  {
    std::jthread writer([&] {
      while (auto items = written.pop()) {
        for (WriteItem& item : *items) {
          try {
            write_file(out_dir / (item.stem + ".vvol"), item.vvol);
            write_file(out_dir / (item.stem + ".labels.json"), item.labels);
            write_file(out_dir / (item.stem + ".aug.json"), item.record);
            item.vvol.clear();
            item.vvol.shrink_to_fit();
            log_items.push_back(std::move(item));
          } catch (const std::exception& e) {
            skip(item.index, item.id, e.what());
          }
          gauge.release(1);
        }
      }
    });

    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (auto task = work.pop()) {
          std::vector<WriteItem> out;
          const std::size_t count = task->samples.size();
          try {
            Rng batch_rng(derive_stream_seed(config.seed, kBatchStream, task->batch_index));
            JointResult result = joint_policy(std::move(task->samples), probs, batch_rng, aug);
            for (std::size_t k = 0; k < result.samples.size(); ++k) {
              out.push_back(encode_sample(result.samples[k], task->indices[k]));
            }
          } catch (const std::exception& e) {
            for (std::size_t k = 0; k < count; ++k) {
              skip(task->indices[k], manifest[task->indices[k]].id, e.what());
            }
            gauge.release(count);
            continue;
          }
          written.push(std::move(out));
        }
      });
    }

    // Reader: batches are fixed runs of manifest indices, so partner draws do
    // not depend on scheduling.
    for (std::size_t first = 0, b = 0; first < manifest.size(); first += batch, ++b) {
      BatchTask task;
      task.batch_index = b;
      for (std::size_t i = first; i < std::min(first + batch, manifest.size()); ++i) {
        try {
          task.samples.push_back(load_sample(manifest[i], i, config));
          task.indices.push_back(i);
          gauge.add(1);
        } catch (const std::exception& e) {
          skip(i, manifest[i].id, e.what());
        }
      }
      if (!task.samples.empty()) work.push(std::move(task));
    }
    work.close();
    for (auto& t : pool) t.join();
    written.close();
  }

  std::sort(log_items.begin(), log_items.end(),
            [](const WriteItem& a, const WriteItem& b) { return a.index < b.index; });
  std::sort(skips.begin(), skips.end(),
            [](const SkipEntry& a, const SkipEntry& b) { return a.index < b.index; });

  PipelineSummary summary;
  summary.samples = log_items.size();
  summary.skipped = skips.size();
  summary.peak_buffers = gauge.peak();
  // queued + in workers + awaiting the writer + the batch being assembled
  summary.buffer_limit = (2 * queue + workers + 2) * batch;
  summary.exit_code = skips.empty() ? 0 : 2;

  nlohmann::json samples = nlohmann::json::array();
  for (const WriteItem& item : log_items) {
    samples.push_back({{"index", item.index},
                       {"id", item.id},
                       {"kind", item.kind},
                       {"file", item.stem + ".vvol"},
                       {"sha256", item.digest},
                       {"labels_sha256", item.labels_digest}});
  }
  nlohmann::json errors = nlohmann::json::array();
  for (const SkipEntry& s : skips) {
    errors.push_back({{"index", s.index}, {"id", s.id}, {"message", s.message}});
  }
  nlohmann::json log = {{"global_seed", config.seed},
                        {"config_hash", config_hash(config)},
                        {"config", pipeline_config_to_json(config)},
                        {"num_manifest_entries", manifest.size()},
                        {"num_samples", summary.samples},
                        {"num_skipped", summary.skipped},
                        {"samples", std::move(samples)},
                        {"errors", std::move(errors)},
                        {"peak_buffers", summary.peak_buffers},
                        {"buffer_limit", summary.buffer_limit}};
  write_file(out_dir / "run_log.json", log.dump(2) + "\n");

  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

}  // namespace volaug
