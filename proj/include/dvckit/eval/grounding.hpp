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
#include <span>
#include <vector>

#include "dvckit/eval/iou.hpp"

namespace dvckit::eval {

struct TvgScorecard {
  std::map<double, double> recall_at;  // threshold -> fraction in [0, 1]
  double miou = 0.0;                   // 0-100
  std::size_t query_count = 0;
};

// Fraction of IoU values reaching the threshold.
inline double recall_from_ious(std::span<const double> ious, double threshold) {
  if (ious.empty()) throw ValidationError("recall needs at least one query");
  std::size_t hits = 0;
  for (double iou : ious)
    if (iou >= threshold) ++hits;
  return static_cast<double>(hits) / static_cast<double>(ious.size());
}

inline double mean_from_ious(std::span<const double> ious) {
  if (ious.empty()) throw ValidationError("mIoU needs at least one query");
  double sum = 0.0;
  for (double iou : ious) sum += iou;
  return 100.0 * sum / static_cast<double>(ious.size());
}

inline std::vector<double> paired_ious(std::span<const TimeInterval> gt,
                                       std::span<const TimeInterval> pred) {
  if (gt.size() != pred.size())
    throw ValidationError("grounding needs one prediction per query (" +
                          std::to_string(gt.size()) + " queries, " +
                          std::to_string(pred.size()) + " predictions)");
  if (gt.empty()) throw ValidationError("grounding needs at least one query");
  std::vector<double> ious;
  ious.reserve(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i)
    ious.push_back(interval_iou(gt[i], pred[i]));
  return ious;
}

// R@k over index-aligned query/prediction intervals.
inline double recall_at_k(std::span<const TimeInterval> gt,
                          std::span<const TimeInterval> pred, double k) {
  const auto ious = paired_ious(gt, pred);
  return recall_from_ious(ious, k);
}

inline double mean_iou(std::span<const TimeInterval> gt,
                       std::span<const TimeInterval> pred) {
  const auto ious = paired_ious(gt, pred);
  return mean_from_ious(ious);
}

inline TvgScorecard tvg_scorecard(std::span<const double> ious,
                                  std::span<const double> thresholds) {
  TvgScorecard card;
  card.query_count = ious.size();
  for (double k : thresholds) card.recall_at[k] = recall_from_ious(ious, k);
  card.miou = mean_from_ious(ious);
  return card;
}

}  // namespace dvckit::eval
