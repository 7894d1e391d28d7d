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

#include <span>
#include <vector>

#include "dvckit/eval/iou.hpp"
#include "dvckit/text/similarity.hpp"

namespace dvckit::eval {

struct TiouScores {
  std::vector<double> per_tau;  // 0-100, one per threshold
  double mean = 0.0;            // 0-100
};

inline void validate_taus(std::span<const double> taus) {
  if (taus.empty()) throw ValidationError("tIoU threshold list is empty");
  for (double tau : taus)
    if (!(tau > 0.0 && tau <= 1.0))
      throw ValidationError("tIoU thresholds must lie in (0, 1]");
}

// Caption metric averaged over every (reference, prediction) pair whose
// temporal IoU reaches tau: the sum of pairwise similarities over all
// qualifying pairs divided by the number of qualifying pairs (0 when no
// pair qualifies). Reported per tau and as the mean over taus, x100.
template <text::CaptionSimilarity Sim>
TiouScores dvc_tiou_metric(std::span<const TokenizedEvent> gt,
                           std::span<const TokenizedEvent> pred, const Sim& sim,
                           std::span<const double> taus) {
  validate_taus(taus);
  TiouScores out;
  out.per_tau.assign(taus.size(), 0.0);
  std::vector<double> sum(taus.size(), 0.0);
  std::vector<std::size_t> pairs(taus.size(), 0);

  for (const auto& ref : gt) {
    for (const auto& cand : pred) {
      const double iou = interval_iou(ref.interval, cand.interval);
      bool scored = false;
      double value = 0.0;
      for (std::size_t t = 0; t < taus.size(); ++t) {
        if (iou < taus[t]) continue;
        if (!scored) {
          value = sim(ref.tokens, cand.tokens);
          scored = true;
        }
        sum[t] += value;
        ++pairs[t];
      }
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    out.per_tau[t] = pairs[t] == 0 ? 0.0 : 100.0 * sum[t] / static_cast<double>(pairs[t]);
    total += out.per_tau[t];
  }
  out.mean = total / static_cast<double>(taus.size());
  return out;
}

template <text::CaptionSimilarity Sim>
TiouScores dvc_tiou_metric(const VideoAnnotation& gt, std::span<const Event> pred,
                           const Sim& sim, std::span<const double> taus) {
  const auto g = tokenize_events(gt.events);
  const auto p = tokenize_events(pred);
  return dvc_tiou_metric(std::span<const TokenizedEvent>(g),
                         std::span<const TokenizedEvent>(p), sim, taus);
}

}  // namespace dvckit::eval
