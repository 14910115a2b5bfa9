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

// volaug: command-line front end for the volume augmentation engine.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "volaug/cutmix.hpp"
#include "volaug/eval.hpp"
#include "volaug/freeze.hpp"
#include "volaug/io.hpp"
#include "volaug/masks.hpp"
#include "volaug/mixup.hpp"
#include "volaug/pipeline.hpp"
#include "volaug/policy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;

fs::path sibling(const fs::path& vvol, const std::string& suffix) {
  fs::path p = vvol;
  p.replace_extension();
  return p.string() + suffix;
}

void write_step(const fs::path& out, const volaug::StepResult& step) {
  volaug::write_vvol(out, step.clip);
  volaug::write_label_track(sibling(out, ".labels.json"), step.labels);
  volaug::write_file(sibling(out, ".aug.json"),
                     volaug::dump_canonical(volaug::aug_record_to_json(step.record)));
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const volaug::EvalReport& r, const std::string& protocol, int dilation) {
  json per_class = json::array();
  for (const auto& ap : r.per_class_ap) per_class.push_back(optional_json(ap));
  return {{"protocol", protocol},
          {"map", optional_json(r.map)},
          {"per_class_ap", std::move(per_class)},
          {"num_frames", r.num_frames},
          {"dilation", dilation},
          {"split_maps",
           {{"single_action", optional_json(r.splits.single_action)},
            {"multi_action", optional_json(r.splits.multi_action)},
            {"boundary", optional_json(r.splits.boundary)},
            {"non_boundary", optional_json(r.splits.non_boundary)}}}};
}

Eigen::VectorXd read_weights(const fs::path& path) {
  const json j = json::parse(volaug::read_file(path));
  const json& arr = j.is_object() ? j.at("weights") : j;
  const auto w = arr.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume augmentations for self-supervised temporal detection pretraining"};
  app.require_subcommand(1);

  // freeze
  auto* freeze_cmd = app.add_subcommand("freeze", "Freeze random segments of one clip");
  fs::path fz_in, fz_labels, fz_out = "freeze.vvol";
  std::uint64_t fz_seed = 0;
  int fz_segments = 1;
  int fz_background = -1;
  freeze_cmd->add_option("--in", fz_in, "Input VVOL")->required();
  freeze_cmd->add_option("--labels", fz_labels, "Label track JSON")->required();
  freeze_cmd->add_option("--seed", fz_seed, "Seed")->required();
  freeze_cmd->add_option("--segments", fz_segments, "Number of frozen segments")
      ->check(CLI::PositiveNumber);
  freeze_cmd->add_option("--background-class", fz_background,
                         "Mark frozen frames with this class instead of all-zeros rows");
  freeze_cmd->add_option("--out", fz_out, "Output VVOL (labels and record written alongside)");

  // mixup
  auto* mixup_cmd = app.add_subcommand("mixup", "Temporally blend two clips");
  fs::path mx_a, mx_b, mx_la, mx_lb, mx_out = "mixup.vvol";
  std::uint64_t mx_seed = 0;
  bool mx_hard = false;
  int mx_fit = 0;
  mixup_cmd->add_option("--a", mx_a, "Clip 1 VVOL")->required();
  mixup_cmd->add_option("--b", mx_b, "Clip 2 VVOL")->required();
  mixup_cmd->add_option("--labels-a", mx_la, "Clip 1 labels")->required();
  mixup_cmd->add_option("--labels-b", mx_lb, "Clip 2 labels")->required();
  mixup_cmd->add_option("--seed", mx_seed, "Seed")->required();
  mixup_cmd->add_flag("--hard", mx_hard, "Hard {0,1} boundaries");
  mixup_cmd->add_option("--fit", mx_fit, "Fit output to T frames (0 = natural length)");
  mixup_cmd->add_option("--out", mx_out, "Output VVOL");

  // cutmix
  auto* cutmix_cmd = app.add_subcommand("cutmix", "Spatially composite two clips");
  fs::path cm_a, cm_b, cm_la, cm_lb, cm_out = "cutmix.vvol";
  std::uint64_t cm_seed = 0;
  std::string cm_mode = "window";
  int cm_delta = 0;
  int cm_fit = 0;
  cutmix_cmd->add_option("--a", cm_a, "Clip 1 VVOL")->required();
  cutmix_cmd->add_option("--b", cm_b, "Clip 2 VVOL")->required();
  cutmix_cmd->add_option("--labels-a", cm_la, "Clip 1 labels")->required();
  cutmix_cmd->add_option("--labels-b", cm_lb, "Clip 2 labels")->required();
  cutmix_cmd->add_option("--mode", cm_mode, "window or view")
      ->check(CLI::IsMember({"window", "view"}));
  cutmix_cmd->add_option("--delta", cm_delta, "Transition half-width in pixels (0 = default)");
  cutmix_cmd->add_option("--seed", cm_seed, "Seed")->required();
  cutmix_cmd->add_option("--fit", cm_fit, "Fit window-mode output to T frames");
  cutmix_cmd->add_option("--out", cm_out, "Output VVOL");

  // mask
  auto* mask_cmd = app.add_subcommand("mask", "Print masks as JSON");
  mask_cmd->require_subcommand(1);
  auto* mask_mixup = mask_cmd->add_subcommand("mixup", "Temporal alpha mask");
  int mm_n1 = 0, mm_n2 = 0, mm_r = 0, mm_res = 0;
  bool mm_hard = false;
  mask_mixup->add_option("--n1", mm_n1)->required();
  mask_mixup->add_option("--n2", mm_n2)->required();
  mask_mixup->add_option("--r", mm_r)->required();
  mask_mixup->add_option("--out-res", mm_res, "Resample to this many points");
  mask_mixup->add_flag("--hard", mm_hard);
  auto* mask_cutmix = mask_cmd->add_subcommand("cutmix", "One row of the spatial mask");
  int mc_w = 0, mc_wt = 0, mc_delta = 1;
  mask_cutmix->add_option("--w", mc_w, "Frame width")->required();
  mask_cutmix->add_option("--wt", mc_wt, "Split column")->required();
  mask_cutmix->add_option("--delta", mc_delta, "Transition half-width")->required();

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "Augment a manifest of clips");
  fs::path pp_manifest, pp_out, pp_config;
  volaug::PipelineConfig pp;
  std::vector<double> pp_probs;
  std::string pp_mode;
  pipe_cmd->add_option("--manifest", pp_manifest, "JSON-lines manifest")->required();
  pipe_cmd->add_option("--out", pp_out, "Output directory")->required();
  pipe_cmd->add_option("--config", pp_config, "JSON config file");
  auto* o_policy = pipe_cmd->add_option("--policy", pp.policy, "joint | single:{vf,vm,vc}");
  auto* o_probs = pipe_cmd->add_option("--probs", pp_probs, "p_vf,p_vm,p_vc")->delimiter(',')->expected(3);
  auto* o_seed = pipe_cmd->add_option("--seed", pp.seed, "Global seed");
  auto* o_workers = pipe_cmd->add_option("--workers", pp.workers, "Worker threads");
  auto* o_window = pipe_cmd->add_option("--window", pp.window, "Frames per sample (0 = all)");
  auto* o_stride = pipe_cmd->add_option("--stride", pp.stride, "Frame stride");
  auto* o_fit = pipe_cmd->add_option("--fit", pp.fit, "Fit blended outputs to T frames");
  auto* o_delta = pipe_cmd->add_option("--delta", pp.delta, "CutMix transition half-width");
  auto* o_mode = pipe_cmd->add_option("--mode", pp_mode, "CutMix mode: window or view");
  auto* o_batch = pipe_cmd->add_option("--batch", pp.batch_size, "Batch size");
  auto* o_classes = pipe_cmd->add_option("--num-classes", pp.num_classes, "Label space size");
  auto* o_segments = pipe_cmd->add_option("--segments", pp.segments, "Frozen segments");
  bool pp_hard = false;
  auto* o_hard = pipe_cmd->add_flag("--hard", pp_hard, "Hard mixup boundaries");

  // ensemble
  auto* ens_cmd = app.add_subcommand("ensemble", "Average prediction tracks");
  std::vector<fs::path> en_in;
  fs::path en_out;
  bool en_geo = false;
  ens_cmd->add_option("--in", en_in, "Prediction track JSON files")->required();
  ens_cmd->add_option("--out", en_out, "Output JSON")->required();
  ens_cmd->add_flag("--geometric", en_geo, "Geometric instead of arithmetic mean");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Per-frame detection mAP");
  fs::path ev_preds, ev_truth, ev_weights, ev_report;
  std::string ev_protocol = "per-frame";
  int ev_dilation = 3;
  eval_cmd->add_option("--preds", ev_preds, "Directory of <id>.json prediction tracks")->required();
  eval_cmd->add_option("--truth", ev_truth, "Directory of <id>.json label tracks")->required();
  eval_cmd->add_option("--protocol", ev_protocol)->check(CLI::IsMember({"per-frame", "charades25"}));
  eval_cmd->add_option("--weights", ev_weights, "Class weight JSON");
  eval_cmd->add_option("--dilation", ev_dilation, "Boundary radius in frames");
  eval_cmd->add_option("--report", ev_report, "Report JSON")->required();

  // inspect
  auto* inspect_cmd = app.add_subcommand("inspect", "Print VVOL header fields");
  fs::path in_path;
  inspect_cmd->add_option("file", in_path, "VVOL file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (*freeze_cmd) {
      const volaug::ClipVolume clip = volaug::read_vvol(fz_in);
      const volaug::LabelTrack labels = volaug::read_label_track(fz_labels);
      const std::uint64_t seed = volaug::derive_seed(fz_seed, 0);
      volaug::Rng rng(seed);
      std::vector<volaug::FreezeSegment> segments;
      for (int k = 0; k < fz_segments; ++k) {
        segments.push_back(volaug::sample_freeze_params(volaug::num_frames_of(clip), rng));
      }
      volaug::StepResult step = volaug::run_freeze(clip, labels, segments, {fz_background});
      step.record.seed = seed;
      write_step(fz_out, step);
      return kExitOk;
    }
    if (*mixup_cmd) {
      const volaug::ClipVolume a = volaug::read_vvol(mx_a);
      const volaug::ClipVolume b = volaug::read_vvol(mx_b);
      const std::uint64_t seed = volaug::derive_seed(mx_seed, 0);
      volaug::Rng rng(seed);
      const int shift =
          volaug::sample_mixup_shift(volaug::num_frames_of(a), volaug::num_frames_of(b), rng);
      volaug::StepResult step =
          volaug::run_mixup(a, volaug::read_label_track(mx_la), b, volaug::read_label_track(mx_lb),
                            shift, {mx_hard, mx_fit});
      step.record.seed = seed;
      write_step(mx_out, step);
      return kExitOk;
    }
    if (*cutmix_cmd) {
      const volaug::ClipVolume a = volaug::read_vvol(cm_a);
      const volaug::ClipVolume b = volaug::read_vvol(cm_b);
      const std::uint64_t seed = volaug::derive_seed(cm_seed, 0);
      volaug::Rng rng(seed);
      const int width = std::visit([](const auto& c) { return c.width; }, a);
      const auto mode = cm_mode == "view" ? volaug::CutMixMode::kView : volaug::CutMixMode::kWindow;
      const volaug::CutMixParams params = volaug::sample_cutmix_params(
          volaug::num_frames_of(a), volaug::num_frames_of(b), width, mode, cm_delta, rng);
      volaug::StepResult step = volaug::run_cutmix(a, volaug::read_label_track(cm_la), b,
                                                   volaug::read_label_track(cm_lb), params, cm_fit);
      step.record.seed = seed;
      write_step(cm_out, step);
      return kExitOk;
    }
    if (*mask_mixup) {
      volaug::AlphaMask mask = mm_res > 0 ? volaug::alpha_mask_at_resolution(mm_n1, mm_n2, mm_r, mm_res)
                                          : volaug::alpha_mask(mm_n1, mm_n2, mm_r);
      if (mm_hard) mask = volaug::harden(std::move(mask));
      json values = json::array();
      for (double v : mask.values) values.push_back(v);
      std::cout << json{{"n1", mm_n1}, {"n2", mm_n2}, {"r", mm_r}, {"scenario", mask.scenario},
                        {"length", mask.values.size()}, {"alpha", std::move(values)}}
                       .dump()
                << "\n";
      return kExitOk;
    }
    if (*mask_cutmix) {
      const Eigen::VectorXd row = volaug::spatial_mask_row(mc_w, mc_wt, mc_delta);
      json values = json::array();
      for (double v : row) values.push_back(v);
      std::cout << json{{"width", mc_w}, {"split_column", mc_wt}, {"delta", mc_delta},
                        {"area", volaug::mask_area(volaug::spatial_mask(1, mc_w, mc_wt, mc_delta))}, {"row", std::move(values)}}
                       .dump()
                << "\n";
      return kExitOk;
    }
    if (*pipe_cmd) {
      volaug::PipelineConfig config;
      if (!pp_config.empty()) {
        config = volaug::pipeline_config_from_json(json::parse(volaug::read_file(pp_config)));
      }
      if (o_policy->count()) config.policy = pp.policy;
      if (o_probs->count()) config.probs = {pp_probs[0], pp_probs[1], pp_probs[2]};
      if (o_seed->count()) config.seed = pp.seed;
      if (o_workers->count()) config.workers = pp.workers;
      if (o_window->count()) config.window = pp.window;
      if (o_stride->count()) config.stride = pp.stride;
      if (o_fit->count()) config.fit = pp.fit;
      if (o_delta->count()) config.delta = pp.delta;
      if (o_mode->count()) {
        if (pp_mode != "window" && pp_mode != "view") {
          throw volaug::ParameterError("unknown cutmix mode '" + pp_mode + "'");
        }
        config.mode = pp_mode == "view" ? volaug::CutMixMode::kView : volaug::CutMixMode::kWindow;
      }
      if (o_batch->count()) config.batch_size = pp.batch_size;
      if (o_classes->count()) config.num_classes = pp.num_classes;
      if (o_segments->count()) config.segments = pp.segments;
      if (o_hard->count()) config.hard = pp_hard;
      volaug::validate(config);
      const auto manifest = volaug::read_manifest(pp_manifest);
      const volaug::PipelineSummary s = volaug::run_pipeline(manifest, config, pp_out);
      std::cerr << "pipeline: " << s.samples << " samples written, " << s.skipped
                << " skipped, peak buffers " << s.peak_buffers << ", " << s.seconds << " s\n";
      return s.exit_code;
    }
    if (*ens_cmd) {
      std::vector<volaug::PredictionTrack> tracks;
      for (const auto& p : en_in) tracks.push_back(volaug::read_prediction(p));
      volaug::write_prediction(en_out, volaug::ensemble(tracks, en_geo ? volaug::EnsembleMode::kGeometric
                                                                      : volaug::EnsembleMode::kArithmetic));
      return kExitOk;
    }
    if (*eval_cmd) {
      std::vector<std::string> ids;
      for (const auto& entry : fs::directory_iterator(ev_truth)) {
        if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
      }
      std::sort(ids.begin(), ids.end());
      std::vector<volaug::PredictionTrack> preds;
      std::vector<volaug::LabelTrack> truths;
      for (const auto& id : ids) {
        truths.push_back(volaug::read_label_track(ev_truth / (id + ".json")));
        const fs::path pred = ev_preds / (id + ".json");
        if (!fs::exists(pred)) throw volaug::IoError("no prediction for video " + id);
        preds.push_back(volaug::read_prediction(pred));
      }
      volaug::EvalReport report;
      if (ev_protocol == "charades25") {
        if (ev_weights.empty()) throw volaug::ParameterError("charades25 protocol needs --weights");
        report = volaug::map_charades_protocol(preds, truths, read_weights(ev_weights), ids);
      } else {
        report = volaug::map_per_frame(preds, truths, ids);
      }
      report.splits = volaug::split_statistics(preds, truths, ev_dilation, ids);
      volaug::write_file(ev_report, report_json(report, ev_protocol, ev_dilation).dump(2) + "\n");
      std::cout << "mAP " << (report.map ? std::to_string(*report.map) : "n/a") << " over "
                << ids.size() << " videos\n";
      return kExitOk;
    }
    if (*inspect_cmd) {
      std::ifstream in(in_path, std::ios::binary);
      if (!in) throw volaug::IoError("cannot open " + in_path.string());
      std::string header(volaug::kVvolHeaderSize, '\0');
      in.read(header.data(), static_cast<std::streamsize>(header.size()));
      header.resize(static_cast<std::size_t>(in.gcount()));
      const volaug::VvolHeader h = volaug::decode_vvol_header(header);
      std::cout << "version " << static_cast<int>(volaug::kVvolVersion) << "\n"
                << "dtype " << (h.dtype == volaug::DType::kU8 ? "u8" : "f32") << "\n"
                << "frames " << h.frames << "\n"
                << "height " << h.height << "\n"
                << "width " << h.width << "\n"
                << "channels " << h.channels << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "volaug: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitOk;
}
