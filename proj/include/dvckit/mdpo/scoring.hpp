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
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/core/response.hpp"
#include "dvckit/core/types.hpp"
#include "dvckit/cotasks/render.hpp"
#include "dvckit/eval/soda.hpp"
#include "dvckit/text/similarity.hpp"

namespace dvckit::mdpo {

// Caption similarity used when ranking sampled responses. The default
// divides METEOR by the reference's self score so an exact echo of the
// ground truth scores 100.
struct ResponseSimilarity {
  text::MeteorParams params;
  bool normalized = true;

  double operator()(const text::TokenList& ref, const text::TokenList& cand) const {
    if (normalized) return text::NormalizedMeteorSimilarity{params}(ref, cand);
    return text::MeteorSimilarity{params}(ref, cand);
  }
};

// Task answered at step k (1-based) of a reasoning path.
inline TaskKind task_for_step(PathKind path, int k) {
  if (k < 1 || k > 3)
    throw ValidationError("task index " + std::to_string(k) + " outside 1..3");
  if (k == 1) return TaskKind::count;
  if (path == PathKind::t_then_c)
    return k == 2 ? TaskKind::timestamps : TaskKind::captions;
  return k == 2 ? TaskKind::captions : TaskKind::timestamps;
}

// The structured ground-truth answer for a task, straight from the
// annotation (quantized spans, canonical captions).
inline ParsedResponse target_from_annotation(const VideoAnnotation& ann, TaskKind task,
                                             std::size_t event_index = 0,
                                             int max_token = 99) {
  const auto ev = cotasks::rendered_events(ann, max_token);
  ParsedResponse t;
  t.task = task;
  switch (task) {
    case TaskKind::count:
      t.count = static_cast<int>(ann.events.size());
      break;
    case TaskKind::timestamps:
      t.intervals = ev.spans;
      break;
    case TaskKind::captions:
      t.captions = ev.captions;
      break;
    case TaskKind::interleaved_full:
      t.intervals = ev.spans;
      t.captions = ev.captions;
      break;
    case TaskKind::tvg:
    case TaskKind::clip_caption:
      if (event_index >= ann.events.size())
        throw ValidationError("event index out of range");
      if (task == TaskKind::tvg)
        t.intervals = std::vector<TokenSpan>{ev.spans[event_index]};
      else
        t.captions = std::vector<std::string>{ev.captions[event_index]};
      break;
  }
  return t;
}

namespace detail {

inline std::vector<eval::TokenizedEvent> as_events(const ParsedResponse& r) {
  std::vector<eval::TokenizedEvent> out;
  if (!r.intervals || !r.captions) return out;
  const std::size_t n = std::min(r.intervals->size(), r.captions->size());
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({(*r.intervals)[i].as_interval(), text::tokenize((*r.captions)[i])});
  return out;
}

}  // namespace detail

// Task metric of a parsed response against its target, 0-100:
//   count            100 on an exact match, else 0
//   timestamps, tvg  mean IoU by index over the target spans (missing 0)
//   captions, clip   mean similarity by index over the target captions
//   interleaved      SODA_c F1
// Unparseable responses score 0.
template <text::CaptionSimilarity Sim>
double score_parsed(const ParsedResponse& response, const ParsedResponse& target,
                    const Sim& sim) {
  if (response.unparseable) return 0.0;
  switch (target.task) {
    case TaskKind::count:
      return response.count && target.count && *response.count == *target.count
                 ? 100.0
                 : 0.0;
    case TaskKind::timestamps:
    case TaskKind::tvg: {
      if (!target.intervals || target.intervals->empty() || !response.intervals)
        return 0.0;
      const auto& want = *target.intervals;
      const auto& got = *response.intervals;
      double sum = 0.0;
      for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
        sum += eval::interval_iou(want[i].as_interval(), got[i].as_interval());
      return 100.0 * sum / static_cast<double>(want.size());
    }
    case TaskKind::captions:
    case TaskKind::clip_caption: {
      if (!target.captions || target.captions->empty() || !response.captions)
        return 0.0;
      const auto& want = *target.captions;
      const auto& got = *response.captions;
      double sum = 0.0;
      for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
        sum += sim(text::tokenize(want[i]), text::tokenize(got[i]));
      return 100.0 * sum / static_cast<double>(want.size());
    }
    case TaskKind::interleaved_full: {
      const auto want = detail::as_events(target);
      const auto got = detail::as_events(response);
      return eval::soda_c(std::span<const eval::TokenizedEvent>(want),
                          std::span<const eval::TokenizedEvent>(got), sim)
          .f1;
    }
  }
  return 0.0;
}

template <text::CaptionSimilarity Sim>
double score_response(std::string_view raw, TaskKind task, const ParsedResponse& target,
                      const Sim& sim, int max_token = 99) {
  return score_parsed(parse_response_text(raw, task, max_token), target, sim);
}

// Scores against a ground-truth response text parsed with the same grammar.
template <text::CaptionSimilarity Sim>
double score_response(std::string_view raw, TaskKind task, std::string_view gt_text,
                      const Sim& sim, int max_token = 99) {
  return score_response(raw, task, parse_response_text(gt_text, task, max_token), sim,
                        max_token);
}

}  // namespace dvckit::mdpo
