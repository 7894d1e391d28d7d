// Copyright 2026 The dvckit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dvckit/core/corpus.hpp"
#include "dvckit/cotasks/dataset.hpp"
#include "dvckit/eval/corpus_eval.hpp"
#include "dvckit/io/files.hpp"
#include "dvckit/io/json_format.hpp"
#include "dvckit/io/records.hpp"
#include "dvckit/mdpo/objective.hpp"
#include "dvckit/mdpo/pairs.hpp"
#include "dvckit/toylab/experiment.hpp"

namespace dvckit::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2 };

namespace detail {

struct MeteorFlags {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
  bool stem = false;

  void add(CLI::App& app) {
    app.add_option("--meteor-alpha", alpha, "METEOR precision/recall weight")
        ->capture_default_str();
    app.add_option("--meteor-beta", beta, "METEOR fragmentation exponent")
        ->capture_default_str();
    app.add_option("--meteor-gamma", gamma, "METEOR fragmentation weight")
        ->capture_default_str();
    app.add_flag("--stem", stem, "enable Porter stem matching in METEOR");
  }

  text::MeteorParams params() const {
    text::MeteorParams p{alpha, beta, gamma, stem};
    p.validate();
    return p;
  }
};

// Sink for a subcommand's artifact: a file if --out was given, else stdout.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty())
    out << content;
  else
    io::write_file(path, content);
}

inline std::vector<VideoAnnotation> read_annotations(const std::vector<std::string>& paths,
                                                     ParseMode mode) {
  std::vector<VideoAnnotation> gt;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto doc = io::read_file(paths[i]);
    auto set = parse_annotations(doc, {mode, std::to_string(i)});
    gt.insert(gt.end(), std::make_move_iterator(set.begin()),
              std::make_move_iterator(set.end()));
  }
  return gt;
}

inline ParseMode parse_mode(bool strict) {
  return strict ? ParseMode::strict : ParseMode::lenient;
}

}  // namespace detail

// Entry point shared by the dvckit binary and the tests. Returns the process
// exit status; diagnostics go to `err`, artifacts without --out to `out`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense video captioning metrics, CoTasks data and M-DPO tools", "dvckit"};
  app.require_subcommand(1);

  // eval-dvc
  std::vector<std::string> gt_paths;
  std::string pred_path;
  std::string out_path;
  std::vector<double> taus{0.3, 0.5, 0.7};
  std::vector<double> recall{0.3, 0.5, 0.7};
  bool strict = false;
  unsigned jobs = 1;
  detail::MeteorFlags meteor;

  auto* eval_dvc = app.add_subcommand("eval-dvc", "score dense captions against ground truth");
  eval_dvc->add_option("--gt", gt_paths, "ground-truth file, repeat per reference set")
      ->required();
  eval_dvc->add_option("--pred", pred_path, "prediction file")->required();
  eval_dvc->add_option("--tious", taus, "tIoU thresholds")->delimiter(',')->capture_default_str();
  eval_dvc->add_option("--recall-at", recall, "grounding recall thresholds")
      ->delimiter(',')
      ->capture_default_str();
  eval_dvc->add_flag("--strict", strict, "reject malformed entries instead of repairing");
  eval_dvc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  eval_dvc->add_option("--out", out_path, "output JSON (default stdout)");
  meteor.add(*eval_dvc);

  // eval-tvg
  auto* eval_tvg = app.add_subcommand("eval-tvg", "score temporal grounding");
  eval_tvg->add_option("--gt", gt_paths, "ground-truth file, repeat per reference set")
      ->required();
  eval_tvg->add_option("--pred", pred_path, "prediction file, one span per gt event")->required();
  eval_tvg->add_option("--tious", recall, "recall thresholds")->delimiter(',')->capture_default_str();
  eval_tvg->add_flag("--strict", strict, "reject malformed entries instead of repairing");
  eval_tvg->add_option("--out", out_path, "output JSON (default stdout)");

  // build-cotasks
  std::vector<std::string> path_names{"t_then_c", "c_then_t"};
  bool no_single_turn = false, no_tvg = false, no_clip = false;
  int quantization_max = 99;
  std::uint64_t seed = 0;
  auto* build_ct = app.add_subcommand("build-cotasks", "emit CoTasks conversations as JSONL");
  build_ct->add_option("--gt", gt_paths, "annotation file(s)")->required();
  build_ct->add_option("--paths", path_names, "reasoning paths (t_then_c, c_then_t)")
      ->delimiter(',')
      ->capture_default_str();
  build_ct->add_flag("--no-single-turn", no_single_turn, "skip single-turn samples");
  build_ct->add_flag("--no-tvg", no_tvg, "skip grounding samples");
  build_ct->add_flag("--no-clip-caption", no_clip, "skip clip-caption samples");
  build_ct->add_option("--quantization-max", quantization_max, "largest time token")
      ->capture_default_str();
  build_ct->add_option("--seed", seed, "shuffle seed")->capture_default_str();
  build_ct->add_flag("--strict", strict, "reject malformed entries instead of repairing");
  build_ct->add_option("--out", out_path, "output JSONL (default stdout)");

  // build-mdpo-pairs
  std::string samples_path;
  std::string summary_path;
  double gamma = mdpo::kDefaultGamma;
  std::size_t ns = mdpo::kDefaultSamplesPerTask;
  std::string similarity = "meteor";
  std::vector<double> gamma_grid{0.0, 5.0, 10.0, 15.0};
  auto* build_pairs = app.add_subcommand("build-mdpo-pairs", "form gap-gated preference pairs");
  build_pairs->add_option("--samples", samples_path, "sampled responses JSONL")->required();
  build_pairs->add_option("--gamma", gamma, "minimum metric gap")->capture_default_str();
  build_pairs->add_option("--ns", ns, "responses per task")->capture_default_str();
  build_pairs->add_option("--similarity", similarity, "caption similarity")
      ->check(CLI::IsMember({"meteor", "raw-meteor"}))
      ->capture_default_str();
  build_pairs->add_option("--gamma-grid", gamma_grid, "gap thresholds for the summary sweep")
      ->delimiter(',')
      ->capture_default_str();
  build_pairs->add_option("--quantization-max", quantization_max, "largest time token")
      ->capture_default_str();
  build_pairs->add_option("--out", out_path, "output pairs JSONL (default stdout)");
  build_pairs->add_option("--summary", summary_path, "gamma sweep summary JSON");
  meteor.add(*build_pairs);

  // mdpo-loss
  std::string pairs_path;
  std::string mode_name = "mdpo";
  double beta = mdpo::kDefaultBeta;
  auto* loss = app.add_subcommand("mdpo-loss", "evaluate the preference objective on a batch");
  loss->add_option("--pairs", pairs_path, "pair likelihoods JSONL")->required();
  loss->add_option("--mode", mode_name, "dpo, mdpo_minus or mdpo")->capture_default_str();
  loss->add_option("--beta", beta, "KL strength")->capture_default_str();
  loss->add_option("--gamma", gamma, "gap gate for mdpo")->capture_default_str();
  loss->add_option("--out", out_path, "output JSON (default stdout)");

  // toy-margin
  toylab::ToySetConfig toy_set;
  toylab::MarginExperimentConfig toy;
  std::optional<double> toy_gamma;
  auto* margin = app.add_subcommand("toy-margin", "train a toy policy under each objective");
  margin->add_option("--videos", toy_set.videos, "synthetic videos")->capture_default_str();
  margin->add_option("--ns", toy_set.samples_per_task, "responses per task")->capture_default_str();
  margin->add_option("--epochs", toy.epochs, "training epochs")->capture_default_str();
  margin->add_option("--lr", toy.lr, "learning rate")->capture_default_str();
  margin->add_option("--beta", toy.beta, "KL strength")->capture_default_str();
  margin->add_option("--gamma", toy_gamma, "mdpo gap gate (default: median gap)");
  margin->add_option("--seed", seed, "seed for corpus, samples and policy")
      ->capture_default_str();
  margin->add_option("--out", out_path, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dvckit: " << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    if (eval_dvc->parsed()) {
      eval::DvcEvalConfig config;
      config.taus = taus;
      config.recall_thresholds = recall;
      config.meteor = meteor.params();
      config.jobs = jobs;
      config.validate();
      const auto mode = detail::parse_mode(strict);
      const auto gt = detail::read_annotations(gt_paths, mode);
      const auto pred = parse_predictions(io::read_file(pred_path), {mode});
      const auto card = eval::evaluate_dvc(gt, pred, config);
      detail::emit(out_path, io::to_text(io::scorecard_to_json(card, config)) + "\n", out);
    } else if (eval_tvg->parsed()) {
      const auto mode = detail::parse_mode(strict);
      const auto gt = detail::read_annotations(gt_paths, mode);
      const auto pred = parse_predictions(io::read_file(pred_path), {mode});
      const auto card = eval::evaluate_tvg(gt, pred, recall);
      detail::emit(out_path, io::to_text(io::tvg_to_json(card)) + "\n", out);
    } else if (build_ct->parsed()) {
      cotasks::CtDatasetConfig config;
      config.include_single_turn = !no_single_turn;
      config.include_tvg = !no_tvg;
      config.include_clip_caption = !no_clip;
      config.paths.clear();
      for (const auto& p : path_names) config.paths.insert(path_kind_from_string(p));
      config.quantization_max = quantization_max;
      config.seed = seed;
      config.validate();
      const auto gt = detail::read_annotations(gt_paths, detail::parse_mode(strict));
      const auto dataset = cotasks::build_ct_dataset(gt, config);
      detail::emit(out_path, io::conversations_to_jsonl(dataset.samples), out);
    } else if (build_pairs->parsed()) {
      const mdpo::ResponseSimilarity sim{meteor.params(), similarity == "meteor"};
      if (ns < 2) throw ValidationError("--ns must be >= 2");
      if (!(gamma >= 0.0)) throw ValidationError("--gamma must be >= 0");
      const auto samples = io::parse_sampled_responses(io::read_file(samples_path));
      // Every pair with a positive gap, so the sweep can report any gamma.
      const auto all = mdpo::build_preference_pairs(
          std::span<const mdpo::SampledTaskResponses>(samples), 0.0, sim, ns,
          quantization_max);
      std::vector<mdpo::PreferencePair> kept;
      for (const auto& p : all)
        if (p.gap() > gamma) kept.push_back(p);
      const auto stats = mdpo::summarize_pair_stats(
          std::span<const mdpo::PreferencePair>(all), gamma_grid);
      const auto jsonl = io::pairs_to_jsonl(kept);
      const auto summary =
          io::to_text(io::pair_stats_to_json(stats, gamma, samples.size(), kept.size())) + "\n";
      detail::emit(out_path, jsonl, out);
      if (!summary_path.empty()) io::write_file(summary_path, summary);
    } else if (loss->parsed()) {
      const auto kind = mdpo::objective_kind_from_string(mode_name);
      const mdpo::ObjectiveMode mode{kind, kind == mdpo::ObjectiveKind::mdpo ? gamma : 0.0};
      const auto pairs = io::parse_pair_likelihoods(io::read_file(pairs_path));
      const auto result = mdpo::batch_loss(pairs, mode, beta);
      detail::emit(out_path, io::to_text(io::loss_result_to_json(result, beta)) + "\n", out);
    } else if (margin->parsed()) {
      toy_set.seed = seed;
      toy.seed = seed;
      toy.validate();
      if (toy_set.videos == 0) throw ValidationError("--videos must be >= 1");
      if (toy_set.samples_per_task < 2) throw ValidationError("--ns must be >= 2");
      const auto pairs = toylab::synthesize_toy_pairs(toy_set);
      const double g = toy_gamma ? *toy_gamma : toylab::median_gap(pairs);
      const std::vector<mdpo::ObjectiveMode> modes{
          mdpo::ObjectiveMode::dpo(), mdpo::ObjectiveMode::mdpo_minus(),
          mdpo::ObjectiveMode::mdpo(g)};
      const auto curve = toylab::run_margin_experiment(pairs, modes, toy);
      detail::emit(out_path, io::margin_curve_to_csv(curve), out);
    }
  } catch (const IoError& e) {
    err << "dvckit: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "dvckit: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace dvckit::cli
