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
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dvckit/cotasks/render.hpp"
#include "dvckit/rng.hpp"

namespace dvckit::cotasks {

struct CtDatasetConfig {
  bool include_single_turn = true;
  bool include_tvg = true;
  bool include_clip_caption = true;
  std::set<PathKind> paths{PathKind::t_then_c, PathKind::c_then_t};
  int quantization_max = 99;
  std::uint64_t seed = 0;

  void validate() const {
    if (paths.empty() && !include_single_turn && !include_tvg &&
        !include_clip_caption)
      throw ValidationError("no sample family enabled");
    if (quantization_max < 1) throw ValidationError("quantization max must be >= 1");
  }
};

struct CtDataset {
  std::vector<Conversation> samples;
  std::map<std::string, std::size_t> family_counts;  // keyed by path name
};

// Per annotation: one conversation per enabled path, one single-turn sample,
// and one grounding plus one clip-caption sample per event. Samples are
// generated in annotation order, then shuffled with the configured seed.
inline CtDataset build_ct_dataset(std::span<const VideoAnnotation> annotations,
                                  const CtDatasetConfig& config) {
  config.validate();
  if (annotations.empty()) throw ValidationError("no annotations to convert");

  CtDataset out;
  for (auto path : {ConversationPath::t_then_c, ConversationPath::c_then_t,
                    ConversationPath::single_turn, ConversationPath::tvg,
                    ConversationPath::clip_caption})
    out.family_counts[std::string(to_string(path))] = 0;

  const int q = config.quantization_max;
  auto emit = [&](Conversation conv) {
    ++out.family_counts[std::string(to_string(conv.path))];
    out.samples.push_back(std::move(conv));
  };
  for (const auto& ann : annotations) {
    for (PathKind path : config.paths) emit(render_cotasks_sample(ann, path, q));
    if (config.include_single_turn)
      emit(render_auxiliary_sample(ann, AuxiliaryKind::single_turn, 0, q));
    for (std::size_t i = 0; i < ann.events.size(); ++i) {
      if (config.include_tvg)
        emit(render_auxiliary_sample(ann, AuxiliaryKind::tvg, i, q));
      if (config.include_clip_caption)
        emit(render_auxiliary_sample(ann, AuxiliaryKind::clip_caption, i, q));
    }
  }
  Rng rng(config.seed);
  rng.shuffle(std::span<Conversation>(out.samples));
  return out;
}

}  // namespace dvckit::cotasks
