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

#include <cmath>
#include <cstddef>
#include <map>
#include <span>

#include "dvckit/error.hpp"

namespace dvckit::eval {

struct CountDiagnostics {
  double accuracy = 0.0;     // fraction of videos with the exact count
  double kl = 0.0;           // KL(gt || pred) over count histograms, nats
  double gt_variance = 0.0;  // population variance of gt counts
};

inline constexpr double kCountSmoothing = 1e-9;

// Segment-count diagnostics over index-aligned per-video counts. Histograms
// share the union of observed counts as support. When the predicted
// histogram has an empty bin on that support, every predicted bin gets
// +epsilon and is renormalized; gt zeros contribute 0 by convention.
inline CountDiagnostics count_diagnostics(std::span<const std::size_t> pred,
                                          std::span<const std::size_t> gt) {
  if (gt.empty()) throw ValidationError("count diagnostics need at least one video");
  if (pred.size() != gt.size())
    throw ValidationError("predicted and ground-truth count lists differ in length");

  CountDiagnostics out;
  const double n = static_cast<double>(gt.size());
  std::size_t exact = 0;
  std::map<std::size_t, double> p_hist, q_hist;
  double mean = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (pred[i] == gt[i]) ++exact;
    p_hist[gt[i]] += 1.0;
    q_hist[pred[i]] += 1.0;
    p_hist.try_emplace(pred[i], 0.0);
    q_hist.try_emplace(gt[i], 0.0);
    mean += static_cast<double>(gt[i]);
  }
  out.accuracy = static_cast<double>(exact) / n;

  mean /= n;
  double var = 0.0;
  for (std::size_t c : gt) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  out.gt_variance = var / n;

  bool has_zero = false;
  for (const auto& [_, count] : q_hist) has_zero = has_zero || count == 0.0;
  const double eps = has_zero ? kCountSmoothing : 0.0;
  const double q_norm = 1.0 + eps * static_cast<double>(q_hist.size());

  double kl = 0.0;
  for (const auto& [count, p_count] : p_hist) {
    if (p_count == 0.0) continue;
    const double p = p_count / n;
    const double q = (q_hist[count] / n + eps) / q_norm;
    kl += p * std::log(p / q);
  }
  out.kl = kl;
  return out;
}

}  // namespace dvckit::eval
