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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvckit/mdpo/scoring.hpp"

namespace dvckit::mdpo {

inline constexpr double kDefaultGamma = 10.0;
inline constexpr std::size_t kDefaultSamplesPerTask = 3;

// n_s sampled answers to the k-th task of a path, with the ground-truth
// conversation prefix that preceded the prompt.
struct SampledTaskResponses {
  std::string video_id;
  PathKind path = PathKind::t_then_c;
  int k = 2;
  std::vector<Turn> history;
  std::string prompt;
  std::vector<std::string> responses;
  std::string gt_response;

  TaskKind task() const { return task_for_step(path, k); }
};

struct ScoredResponse {
  std::string text;
  ParsedResponse parsed;
  double metric = 0.0;  // 0-100
  std::size_t index = 0;
};

struct PreferencePair {
  ScoredResponse preferred;
  ScoredResponse dispreferred;
  int k = 2;
  TaskKind task = TaskKind::timestamps;
  PathKind path = PathKind::t_then_c;
  std::string video_id;
  std::vector<Turn> history;
  std::string prompt;

  double m_w() const { return preferred.metric; }
  double m_l() const { return dispreferred.metric; }
  double gap() const { return preferred.metric - dispreferred.metric; }
};

inline void validate_sample(const SampledTaskResponses& s,
                            std::optional<std::size_t> expected_ns) {
  if (s.k == 1)
    throw ValidationError("video '" + s.video_id +
                          "': the count task (k = 1) is not used for preference pairs");
  (void)task_for_step(s.path, s.k);
  if (s.responses.size() < 2)
    throw ValidationError("video '" + s.video_id + "': need at least 2 sampled responses");
  if (expected_ns && s.responses.size() != *expected_ns)
    throw ValidationError("video '" + s.video_id + "': expected " +
                          std::to_string(*expected_ns) + " responses, found " +
                          std::to_string(s.responses.size()));
}

// Scores every response, forms all C(n_s, 2) pairs oriented by metric, and
// keeps the pairs whose gap strictly exceeds gamma. Ties never form a pair.
// Output order: sample order, then (i, j) response-index order.
template <text::CaptionSimilarity Sim>
std::vector<PreferencePair> build_preference_pairs(
    std::span<const SampledTaskResponses> samples, double gamma, const Sim& sim,
    std::optional<std::size_t> expected_ns = std::nullopt, int max_token = 99) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ValidationError("gamma must be a finite value >= 0");
  std::vector<PreferencePair> out;
  for (const auto& sample : samples) {
    validate_sample(sample, expected_ns);
    const TaskKind task = sample.task();
    const ParsedResponse target =
        parse_response_text(sample.gt_response, task, max_token);

    std::vector<ScoredResponse> scored;
    for (std::size_t i = 0; i < sample.responses.size(); ++i) {
      ScoredResponse r{sample.responses[i],
                       parse_response_text(sample.responses[i], task, max_token), 0.0, i};
      r.metric = score_parsed(r.parsed, target, sim);
      scored.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < scored.size(); ++i) {
      for (std::size_t j = i + 1; j < scored.size(); ++j) {
        const auto& a = scored[i];
        const auto& b = scored[j];
        if (a.metric == b.metric) continue;
        const bool a_wins = a.metric > b.metric;
        PreferencePair p{a_wins ? a : b, a_wins ? b : a, sample.k, task,
                         sample.path, sample.video_id, sample.history, sample.prompt};
        if (p.gap() > gamma) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

struct PairStats {
  std::vector<double> gammas;
  std::vector<std::size_t> retained;         // pairs with gap > gamma, per gamma
  std::vector<std::size_t> gap_histogram;    // bins [0,5), [5,10), ..., [95,100]
  static constexpr double kBinWidth = 5.0;
};

inline PairStats summarize_pair_stats(std::span<const double> gaps,
                                      std::span<const double> gamma_grid) {
  PairStats stats;
  stats.gammas.assign(gamma_grid.begin(), gamma_grid.end());
  stats.retained.assign(gamma_grid.size(), 0);
  stats.gap_histogram.assign(20, 0);
  for (double gap : gaps) {
    for (std::size_t g = 0; g < gamma_grid.size(); ++g)
      if (gap > gamma_grid[g]) ++stats.retained[g];
    auto bin = static_cast<std::size_t>(std::max(0.0, gap) / PairStats::kBinWidth);
    stats.gap_histogram[std::min<std::size_t>(bin, stats.gap_histogram.size() - 1)]++;
  }
  return stats;
}

inline PairStats summarize_pair_stats(std::span<const PreferencePair> pairs,
                                      std::span<const double> gamma_grid) {
  std::vector<double> gaps;
  gaps.reserve(pairs.size());
  for (const auto& p : pairs) gaps.push_back(p.gap());
  return summarize_pair_stats(std::span<const double>(gaps), gamma_grid);
}

}  // namespace dvckit::mdpo
