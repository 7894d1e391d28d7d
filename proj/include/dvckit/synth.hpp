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
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/core/types.hpp"
#include "dvckit/rng.hpp"

namespace dvckit::synth {

inline constexpr std::array<std::string_view, 8> kSubjects{
    "a man", "a woman", "the boy", "a girl", "two people", "the chef", "a dog",
    "the team"};
inline constexpr std::array<std::string_view, 10> kVerbs{
    "runs across", "picks up", "throws", "talks about", "cuts", "mixes",
    "paints", "climbs", "washes", "carries"};
inline constexpr std::array<std::string_view, 10> kObjects{
    "the ball", "a rope", "some vegetables", "the wall", "a bowl", "the fence",
    "a guitar", "the car", "a ladder", "the dough"};
inline constexpr std::array<std::string_view, 6> kTails{
    "", " slowly", " in the park", " on stage", " with a friend", " again"};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::array<std::string_view, N>& items) {
  return items[rng.below(N)];
}

inline std::string random_caption(Rng& rng) {
  std::string caption(pick(rng, kSubjects));
  caption[0] = static_cast<char>(caption[0] - 'a' + 'A');
  caption += ' ';
  caption += pick(rng, kVerbs);
  caption += ' ';
  caption += pick(rng, kObjects);
  caption += pick(rng, kTails);
  return caption;
}

struct CorpusShape {
  std::size_t min_events = 2;
  std::size_t max_events = 5;
  double min_duration = 30.0;
  double max_duration = 240.0;
};

// Videos whose events tile the timeline in order without overlapping, so
// distinct events of a video have IoU 0.
inline std::vector<VideoAnnotation> make_corpus(std::size_t videos, std::uint64_t seed,
                                                const CorpusShape& shape = {}) {
  Rng rng(seed);
  std::vector<VideoAnnotation> out;
  out.reserve(videos);
  for (std::size_t v = 0; v < videos; ++v) {
    VideoAnnotation ann;
    char id[32];
    std::snprintf(id, sizeof id, "v_%05zu", v);
    ann.video_id = id;
    ann.reference_set_id = "0";
    ann.duration = std::round(rng.uniform(shape.min_duration, shape.max_duration) * 100.0) / 100.0;
    const auto n = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(shape.min_events),
                    static_cast<std::int64_t>(shape.max_events)));
    // Random cut points, then a small gap trimmed from each segment.
    std::vector<double> cuts{0.0};
    for (std::size_t i = 1; i < n; ++i)
      cuts.push_back(ann.duration * (static_cast<double>(i) + rng.uniform(-0.3, 0.3)) /
                     static_cast<double>(n));
    cuts.push_back(ann.duration);
    for (std::size_t i = 0; i < n; ++i) {
      const double len = cuts[i + 1] - cuts[i];
      const double start = std::round((cuts[i] + rng.uniform(0.0, 0.1) * len) * 100.0) / 100.0;
      const double end = std::round((cuts[i + 1] - rng.uniform(0.0, 0.1) * len) * 100.0) / 100.0;
      // Captions are distinct within a video, so a caption names one event.
      std::string caption = random_caption(rng);
      while (std::any_of(ann.events.begin(), ann.events.end(),
                         [&](const Event& e) { return e.caption == caption; }))
        caption = random_caption(rng);
      ann.events.push_back({{start, end}, std::move(caption)});
    }
    out.push_back(std::move(ann));
  }
  return out;
}

}  // namespace dvckit::synth
