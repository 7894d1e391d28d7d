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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dvckit/cotasks/dataset.hpp"
#include "dvckit/cotasks/render.hpp"
#include "dvckit/mdpo/scoring.hpp"
#include "dvckit/synth.hpp"

namespace dvckit::cotasks {
namespace {

VideoAnnotation two_events() {
  return {"v2", 120.0, {{{0, 60}, "A man opens a door."}, {{60, 120}, "He walks in."}}, "0"};
}

VideoAnnotation three_events() {
  return {"v3", 90.0,
          {{{0, 20}, "One."}, {{25, 50}, "Two things happen."}, {{55, 90}, "Three."}},
          "0"};
}

TEST(Quantize, EndpointsAndRounding) {
  EXPECT_EQ(quantize_time(0, 120), 0);
  EXPECT_EQ(quantize_time(120, 120), 99);
  EXPECT_EQ(quantize_time(12.0, 120), 10);
  EXPECT_EQ(quantize_time(60.0, 120), 50);  // 49.5 rounds up
  EXPECT_EQ(format_token(quantize_time(12.0, 120)), "10");
  EXPECT_EQ(format_token(3), "03");
}

TEST(Quantize, OutOfRangeClampsOrErrors) {
  EXPECT_EQ(quantize_time(-1, 120), 0);
  EXPECT_EQ(quantize_time(500, 120), 99);
  EXPECT_THROW(quantize_time(-1, 120, 99, ParseMode::strict), ValidationError);
  EXPECT_THROW(quantize_time(1, 0), ValidationError);
}

TEST(Quantize, MonotoneInTime) {
  int prev = 0;
  for (double t = 0; t <= 77.0; t += 0.13) {
    const int q = quantize_time(t, 77.0);
    EXPECT_GE(q, prev);
    prev = q;
  }
}

TEST(Render, TimestampsThenCaptions) {
  const auto c = render_cotasks_sample(two_events(), PathKind::t_then_c);
  ASSERT_EQ(c.turns.size(), 6u);
  const std::vector<TaskKind> tasks{TaskKind::count, TaskKind::count, TaskKind::timestamps,
                                    TaskKind::timestamps, TaskKind::captions, TaskKind::captions};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(c.turns[i].task, tasks[i]);
    EXPECT_EQ(c.turns[i].speaker, i % 2 == 0 ? Speaker::prompter : Speaker::responder);
  }
  EXPECT_EQ(c.path, ConversationPath::t_then_c);
  EXPECT_EQ(c.turns[0].text, Templates::kCount);
  EXPECT_EQ(c.turns[1].text, "2");
  EXPECT_EQ(c.turns[3].text, "From 00 to 50. From 50 to 99.");
  EXPECT_EQ(c.turns[5].text, "From 00 to 50, A man opens a door.\nFrom 50 to 99, He walks in.");
}

TEST(Render, CaptionsThenTimestamps) {
  const auto c = render_cotasks_sample(two_events(), PathKind::c_then_t);
  ASSERT_EQ(c.turns.size(), 6u);
  EXPECT_EQ(c.turns[2].text, Templates::kExplain);
  EXPECT_EQ(c.turns[3].text, "A man opens a door. He walks in.");
  EXPECT_EQ(c.turns[3].task, TaskKind::captions);
  EXPECT_EQ(c.turns[4].text, Templates::kSegmentsGivenCaptions);
  EXPECT_EQ(c.turns[5].task, TaskKind::timestamps);
}

TEST(Render, SingleEvent) {
  const VideoAnnotation one{"v1", 10.0, {{{2, 8}, "Solo."}}, "0"};
  const auto c = render_cotasks_sample(one, PathKind::t_then_c);
  EXPECT_EQ(c.turns[1].text, "1");
  EXPECT_EQ(c.turns[3].text, "From 20 to 79.");
}

TEST(Render, Auxiliary) {
  const auto ann = two_events();
  const auto tvg = render_auxiliary_sample(ann, AuxiliaryKind::tvg, 0);
  ASSERT_EQ(tvg.turns.size(), 2u);
  EXPECT_EQ(tvg.turns[0].text, "During which frames can we see A man opens a door in the video?");
  EXPECT_EQ(tvg.turns[1].text, "From 00 to 50.");

  const auto clip = render_auxiliary_sample(ann, AuxiliaryKind::clip_caption, 1);
  EXPECT_EQ(clip.turns[0].text, "Can you describe what occurred from 50 to 99 in the video?");
  EXPECT_EQ(clip.turns[1].text, "He walks in.");

  const auto single = render_auxiliary_sample(ann, AuxiliaryKind::single_turn);
  ASSERT_EQ(single.turns.size(), 2u);
  EXPECT_EQ(single.turns[0].text, Templates::kSingleTurn);
  EXPECT_EQ(single.turns[1].task, TaskKind::interleaved_full);
  EXPECT_EQ(single.turns[1].text, render_cotasks_sample(ann, PathKind::t_then_c).turns[5].text);

  EXPECT_THROW(render_auxiliary_sample(ann, AuxiliaryKind::tvg, 2), ValidationError);
  EXPECT_THROW(render_cotasks_sample({"e", 10.0, {}, "0"}, PathKind::t_then_c), ValidationError);
}

TEST(Dataset, EmissionCount) {
  const std::vector<VideoAnnotation> anns{two_events(), three_events()};
  const auto d = build_ct_dataset(anns, {});
  EXPECT_EQ(d.samples.size(), 16u);
  EXPECT_EQ(d.family_counts.at("t_then_c"), 2u);
  EXPECT_EQ(d.family_counts.at("c_then_t"), 2u);
  EXPECT_EQ(d.family_counts.at("single_turn"), 2u);
  EXPECT_EQ(d.family_counts.at("tvg"), 5u);
  EXPECT_EQ(d.family_counts.at("clip_caption"), 5u);
}

TEST(Dataset, OnePathNoAuxiliary) {
  const std::vector<VideoAnnotation> anns{two_events(), three_events()};
  CtDatasetConfig c;
  c.paths = {PathKind::t_then_c};
  c.include_single_turn = c.include_tvg = c.include_clip_caption = false;
  const auto d = build_ct_dataset(anns, c);
  EXPECT_EQ(d.samples.size(), 2u);
}

TEST(Dataset, EmissionCountProperty) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto corpus = synth::make_corpus(7, seed);
    std::size_t events = 0;
    for (const auto& a : corpus) events += a.events.size();
    for (int mask = 0; mask < 16; ++mask) {
      CtDatasetConfig c;
      c.paths.clear();
      if (mask & 1) c.paths.insert(PathKind::t_then_c);
      if (mask & 2) c.paths.insert(PathKind::c_then_t);
      c.include_single_turn = mask & 4;
      c.include_tvg = c.include_clip_caption = mask & 8;
      if (mask == 0) {
        EXPECT_THROW(build_ct_dataset(corpus, c), ValidationError);
        continue;
      }
      const std::size_t want = corpus.size() * (c.paths.size() + (c.include_single_turn ? 1 : 0)) +
                               (c.include_tvg ? 2 * events : 0);
      EXPECT_EQ(build_ct_dataset(corpus, c).samples.size(), want);
    }
  }
}

TEST(Dataset, SeedDeterminesOrder) {
  const auto corpus = synth::make_corpus(5, 3);
  CtDatasetConfig c;
  c.seed = 17;
  EXPECT_EQ(build_ct_dataset(corpus, c).samples, build_ct_dataset(corpus, c).samples);
  c.seed = 18;
  const auto other = build_ct_dataset(corpus, c).samples;
  c.seed = 17;
  EXPECT_NE(build_ct_dataset(corpus, c).samples, other);
}

TEST(Dataset, Errors) {
  EXPECT_THROW(build_ct_dataset(std::span<const VideoAnnotation>{}, {}), ValidationError);
  CtDatasetConfig c;
  c.quantization_max = 0;
  const std::vector<VideoAnnotation> anns{two_events()};
  EXPECT_THROW(build_ct_dataset(anns, c), ValidationError);
}

TEST(InferencePrompts, PathsShareTheFirstPrompt) {
  const auto ct = inference_prompts(PathKind::c_then_t);
  const auto tc = inference_prompts(PathKind::t_then_c);
  EXPECT_EQ(ct, (std::vector<std::string>{std::string(Templates::kCount),
                                          "Can you explain what happened in the video?",
                                          "What are the time segments for each event?"}));
  EXPECT_EQ(tc[1], Templates::kSegments);
  EXPECT_EQ(tc[2], Templates::kCaptionsGivenSegments);
  EXPECT_EQ(ct[0], tc[0]);
}

TEST(RoundTrip, RenderedResponsesParseBackToTheAnnotation) {
  const auto corpus = synth::make_corpus(25, 21);
  for (const auto& ann : corpus) {
    const auto ev = rendered_events(ann);
    for (auto path : {PathKind::t_then_c, PathKind::c_then_t}) {
      const auto conv = render_cotasks_sample(ann, path);
      for (int k = 1; k <= 3; ++k) {
        const auto task = mdpo::task_for_step(path, k);
        const auto& resp = conv.turns[static_cast<std::size_t>(2 * k - 1)];
        const auto parsed = parse_response_text(resp.text, task);
        ASSERT_FALSE(parsed.unparseable) << resp.text;
        if (task == TaskKind::count) {
          EXPECT_EQ(*parsed.count, static_cast<int>(ann.events.size()));
        } else if (task == TaskKind::timestamps) {
          EXPECT_EQ(*parsed.intervals, ev.spans);
        } else {
          EXPECT_EQ(*parsed.captions, ev.captions);
        }
      }
    }
    const auto single = render_auxiliary_sample(ann, AuxiliaryKind::single_turn);
    const auto parsed = parse_response_text(single.turns[1].text, TaskKind::interleaved_full);
    EXPECT_EQ(*parsed.intervals, ev.spans);
    EXPECT_EQ(*parsed.captions, ev.captions);
  }
}

}  // namespace
}  // namespace dvckit::cotasks
