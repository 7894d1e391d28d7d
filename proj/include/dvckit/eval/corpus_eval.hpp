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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dvckit/core/types.hpp"
#include "dvckit/eval/counts.hpp"
#include "dvckit/eval/grounding.hpp"
#include "dvckit/eval/soda.hpp"
#include "dvckit/eval/tiou.hpp"
#include "dvckit/parallel.hpp"
#include "dvckit/text/similarity.hpp"

namespace dvckit::eval {

struct DvcEvalConfig {
  std::vector<double> taus{0.3, 0.5, 0.7};
  std::vector<double> recall_thresholds{0.3, 0.5, 0.7};
  text::MeteorParams meteor;
  std::size_t cider_max_n = 4;
  unsigned jobs = 1;

  void validate() const {
    validate_taus(taus);
    if (recall_thresholds.empty())
      throw ValidationError("recall threshold list is empty");
    meteor.validate();
    if (cider_max_n == 0) throw ValidationError("cider max n must be >= 1");
  }
};

struct TauScores {
  double tau = 0.0;
  double meteor = 0.0;  // E_METEOR(tau), 0-100
  double cider = 0.0;   // E_CIDEr(tau), 0-100
};

struct DvcScorecard {
  SodaResult soda_c;  // corpus means; alignment left empty
  double meteor_tiou = 0.0;
  double cider_tiou = 0.0;
  std::vector<TauScores> per_tau;
  std::size_t video_count = 0;
  std::size_t reference_sets = 0;
  TvgScorecard tvg;
  CountDiagnostics count;
};

namespace detail {

// Ground truth grouped per video, reference sets in document order.
inline std::map<std::string, std::vector<const VideoAnnotation*>> group_by_video(
    std::span<const VideoAnnotation> gt) {
  std::map<std::string, std::vector<const VideoAnnotation*>> out;
  for (const auto& ann : gt) out[ann.video_id].push_back(&ann);
  return out;
}

inline std::size_t count_reference_sets(std::span<const VideoAnnotation> gt) {
  std::map<std::string, int> ids;
  for (const auto& ann : gt) ids[ann.reference_set_id] = 1;
  return ids.size();
}

struct VideoScores {
  double soda_p = 0.0, soda_r = 0.0, soda_f1 = 0.0;
  std::vector<double> meteor_tau, cider_tau;
  std::vector<double> ious;  // one per (reference set, gt event)
  std::vector<std::size_t> gt_counts;
  std::size_t pred_count = 0;
};

inline const std::vector<Event>& predictions_for(const PredictionSet& pred,
                                                 const std::string& video_id) {
  static const std::vector<Event> kNone;
  auto it = pred.find(video_id);
  return it == pred.end() ? kNone : it->second;
}

// Index-aligned IoUs of gt events against predictions; a missing
// prediction scores 0.
inline void append_grounding_ious(const VideoAnnotation& ann,
                                  const std::vector<Event>& pred,
                                  std::vector<double>& ious) {
  for (std::size_t i = 0; i < ann.events.size(); ++i)
    ious.push_back(i < pred.size()
                       ? interval_iou(ann.events[i].interval, pred[i].interval)
                       : 0.0);
}

}  // namespace detail

// Corpus dense-captioning scorecard. Videos are the ground-truth videos;
// predictions for other videos are ignored and missing ones count as empty.
// Each per-video score is the mean over the reference sets containing the
// video, and corpus scores are means over videos in video_id order, so the
// result is independent of document order and worker count.
inline DvcScorecard evaluate_dvc(std::span<const VideoAnnotation> gt,
                                 const PredictionSet& pred,
                                 const DvcEvalConfig& config = {}) {
  config.validate();
  if (gt.empty()) throw ValidationError("no ground-truth videos to evaluate");

  std::vector<text::TokenList> reference_corpus;
  for (const auto& ann : gt)
    for (const auto& e : ann.events) reference_corpus.push_back(text::tokenize(e.caption));
  const text::MeteorSimilarity meteor{config.meteor};
  const text::CiderSimilarity cider{std::make_shared<const text::DocFreqTable>(
      reference_corpus, config.cider_max_n)};

  const auto grouped = detail::group_by_video(gt);
  std::vector<const std::vector<const VideoAnnotation*>*> videos;
  std::vector<const std::string*> ids;
  for (const auto& [id, sets] : grouped) {
    ids.push_back(&id);
    videos.push_back(&sets);
  }

  const std::size_t taus = config.taus.size();
  std::vector<detail::VideoScores> scores(videos.size());
  parallel_for_index(videos.size(), config.jobs, [&](std::size_t v) {
    const auto& sets = *videos[v];
    const auto& events = detail::predictions_for(pred, *ids[v]);
    const auto pred_tok = tokenize_events(events);
    auto& out = scores[v];
    out.meteor_tau.assign(taus, 0.0);
    out.cider_tau.assign(taus, 0.0);
    out.pred_count = events.size();
    for (const auto* ann : sets) {
      const auto gt_tok = tokenize_events(ann->events);
      const auto soda = soda_c(std::span<const TokenizedEvent>(gt_tok),
                               std::span<const TokenizedEvent>(pred_tok), meteor);
      out.soda_p += soda.precision;
      out.soda_r += soda.recall;
      out.soda_f1 += soda.f1;
      const auto m = dvc_tiou_metric(std::span<const TokenizedEvent>(gt_tok),
                                     std::span<const TokenizedEvent>(pred_tok),
                                     meteor, config.taus);
      const auto c = dvc_tiou_metric(std::span<const TokenizedEvent>(gt_tok),
                                     std::span<const TokenizedEvent>(pred_tok),
                                     cider, config.taus);
      for (std::size_t t = 0; t < taus; ++t) {
        out.meteor_tau[t] += m.per_tau[t];
        out.cider_tau[t] += c.per_tau[t];
      }
      detail::append_grounding_ious(*ann, events, out.ious);
      out.gt_counts.push_back(ann->events.size());
    }
    const double k = static_cast<double>(sets.size());
    out.soda_p /= k;
    out.soda_r /= k;
    out.soda_f1 /= k;
    for (std::size_t t = 0; t < taus; ++t) {
      out.meteor_tau[t] /= k;
      out.cider_tau[t] /= k;
    }
  });

  DvcScorecard card;
  card.video_count = videos.size();
  card.reference_sets = detail::count_reference_sets(gt);
  std::vector<double> meteor_sum(taus, 0.0), cider_sum(taus, 0.0);
  std::vector<double> ious;
  std::vector<std::size_t> pred_counts, gt_counts;
  for (const auto& s : scores) {
    card.soda_c.precision += s.soda_p;
    card.soda_c.recall += s.soda_r;
    card.soda_c.f1 += s.soda_f1;
    for (std::size_t t = 0; t < taus; ++t) {
      meteor_sum[t] += s.meteor_tau[t];
      cider_sum[t] += s.cider_tau[t];
    }
    ious.insert(ious.end(), s.ious.begin(), s.ious.end());
    for (std::size_t c : s.gt_counts) {
      gt_counts.push_back(c);
      pred_counts.push_back(s.pred_count);
    }
  }
  const double nv = static_cast<double>(videos.size());
  card.soda_c.precision /= nv;
  card.soda_c.recall /= nv;
  card.soda_c.f1 /= nv;
  for (std::size_t t = 0; t < taus; ++t) {
    TauScores ts{config.taus[t], meteor_sum[t] / nv, cider_sum[t] / nv};
    card.meteor_tiou += ts.meteor;
    card.cider_tiou += ts.cider;
    card.per_tau.push_back(ts);
  }
  card.meteor_tiou /= static_cast<double>(taus);
  card.cider_tiou /= static_cast<double>(taus);
  card.tvg = tvg_scorecard(ious, config.recall_thresholds);
  card.count = count_diagnostics(pred_counts, gt_counts);
  return card;
}

// Grounding-only scorecard: every gt event is a query answered by the
// prediction at the same index for that video.
inline TvgScorecard evaluate_tvg(std::span<const VideoAnnotation> gt,
                                 const PredictionSet& pred,
                                 std::span<const double> thresholds) {
  if (thresholds.empty()) throw ValidationError("recall threshold list is empty");
  const auto grouped = detail::group_by_video(gt);
  std::vector<double> ious;
  for (const auto& [id, sets] : grouped)
    for (const auto* ann : sets)
      detail::append_grounding_ious(*ann, detail::predictions_for(pred, id), ious);
  return tvg_scorecard(ious, thresholds);
}

}  // namespace dvckit::eval
