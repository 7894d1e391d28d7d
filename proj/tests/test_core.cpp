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

#include <gtest/gtest.h>

#include "dvckit/core/corpus.hpp"
#include "dvckit/core/response.hpp"
#include "dvckit/rng.hpp"

namespace dvckit {
namespace {

const ParseOptions kStrict{ParseMode::strict, "0"};

TEST(Annotations, DirectFieldMapping) {
  const auto gt = parse_annotations(R"({"v1": {"duration": 120,
      "timestamps": [[0, 60], [60, 120]], "sentences": ["A.", "B."]}})");
  ASSERT_EQ(gt.size(), 1u);
  EXPECT_EQ(gt[0].video_id, "v1");
  EXPECT_EQ(gt[0].duration, 120.0);
  ASSERT_EQ(gt[0].events.size(), 2u);
  EXPECT_EQ(gt[0].events[1].interval, (TimeInterval{60, 120}));
  EXPECT_EQ(gt[0].events[0].caption, "A.");
  EXPECT_EQ(gt[0].reference_set_id, "0");
}

TEST(Annotations, LenientClampsToDuration) {
  const auto gt = parse_annotations(R"({"v1": {"duration": 120,
      "timestamps": [[110, 130], [-5, 10]], "sentences": ["a", "b"]}})");
  EXPECT_EQ(gt[0].events[0].interval, (TimeInterval{110, 120}));
  EXPECT_EQ(gt[0].events[1].interval, (TimeInterval{0, 10}));
}

TEST(Annotations, LenientSwapsReversedPair) {
  const auto gt = parse_annotations(R"({"v1": {"duration": 120,
      "timestamps": [[60, 30]], "sentences": ["a"]}})");
  EXPECT_EQ(gt[0].events[0].interval, (TimeInterval{30, 60}));
}

TEST(Annotations, StrictRejectsReversedPairNamingVideo) {
  const std::string doc = R"({"v_bad": {"duration": 120,
      "timestamps": [[60, 30]], "sentences": ["a"]}})";
  try {
    parse_annotations(doc, kStrict);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("v_bad"), std::string::npos);
    ASSERT_TRUE(e.byte_offset().has_value());
    EXPECT_EQ(*e.byte_offset(), doc.find("\"v_bad\""));
  }
}

TEST(Annotations, NonPositiveDurationIsAnError) {
  EXPECT_THROW(parse_annotations(R"({"v": {"duration": 0, "timestamps": [], "sentences": []}})"),
               ParseError);
  EXPECT_THROW(parse_annotations(R"({"v": {"duration": -3, "timestamps": [], "sentences": []}})"),
               ParseError);
}

TEST(Annotations, MalformedJsonReportsByteOffset) {
  const std::string doc = R"({"v": {"duration": 10, "timestamps": [[0, 1]] "sentences": ["a"]}})";
  try {
    parse_annotations(doc);
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.byte_offset().has_value());
    // The parser reports the offending token by its last byte.
    const auto token = doc.find("\"sentences\"");
    EXPECT_GE(*e.byte_offset(), token);
    EXPECT_LT(*e.byte_offset(), token + std::string("\"sentences\"").size());
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(Annotations, SchemaErrors) {
  EXPECT_THROW(parse_annotations("[1, 2]"), ParseError);
  EXPECT_THROW(parse_annotations(R"({"v": {"duration": 10, "timestamps": [[0, 1]]}})"),
               ParseError);
  EXPECT_THROW(parse_annotations(
                   R"({"v": {"duration": 10, "timestamps": [[0, 1]], "sentences": []}})"),
               ParseError);
  EXPECT_THROW(parse_annotations(
                   R"({"v": {"duration": 10, "timestamps": [[0]], "sentences": ["a"]}})"),
               ParseError);
  EXPECT_THROW(parse_annotations(
                   R"({"v": {"duration": "ten", "timestamps": [], "sentences": []}})"),
               ParseError);
}

TEST(Annotations, EmptyCaptionDroppedLenientRejectedStrict) {
  const std::string doc = R"({"v": {"duration": 10,
      "timestamps": [[0, 1], [2, 3]], "sentences": ["  ", "ok"]}})";
  EXPECT_EQ(parse_annotations(doc)[0].events.size(), 1u);
  EXPECT_THROW(parse_annotations(doc, kStrict), ParseError);
}

TEST(Annotations, DuplicateVideoIsAnError) {
  EXPECT_THROW(parse_annotations(R"({"v": {"duration": 1, "timestamps": [[0,1]], "sentences": ["a"]},
                                     "v": {"duration": 1, "timestamps": [[0,1]], "sentences": ["a"]}})"),
               ParseError);
}

TEST(Predictions, EmptyMapping) {
  EXPECT_TRUE(parse_predictions("{}").empty());
}

TEST(Predictions, VideoWithNoEventsIsRetained) {
  const auto p = parse_predictions(R"({"v": []})");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.at("v").empty());
}

TEST(Predictions, DuplicateVideoIsAnError) {
  const std::string doc = R"({"v": [], "w": [], "v": []})";
  try {
    parse_predictions(doc);
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.byte_offset().has_value());
    EXPECT_EQ(*e.byte_offset(), doc.rfind("\"v\""));
  }
  EXPECT_THROW(parse_predictions(R"({"results": {"v": [], "v": []}})"), ParseError);
}

TEST(Predictions, ResultsWrapperAccepted) {
  const auto p = parse_predictions(
      R"({"results": {"v": [{"timestamp": [3, 1], "sentence": "x"}]}})");
  ASSERT_EQ(p.at("v").size(), 1u);
  EXPECT_EQ(p.at("v")[0].interval, (TimeInterval{1, 3}));
  EXPECT_THROW(parse_predictions(R"({"v": [{"timestamp": [3, 1], "sentence": "x"}]})",
                                 kStrict),
               ParseError);
}

TEST(Predictions, ItemShapeErrors) {
  EXPECT_THROW(parse_predictions(R"({"v": [{"sentence": "x"}]})"), ParseError);
  EXPECT_THROW(parse_predictions(R"({"v": {"timestamp": [0, 1]}})"), ParseError);
}

TEST(Response, TimestampGrammar) {
  const auto r = parse_response_text("From 10 to 50. From 50 to 99.", TaskKind::timestamps);
  ASSERT_TRUE(r.intervals);
  EXPECT_EQ(*r.intervals, (std::vector<TokenSpan>{{10, 50}, {50, 99}}));
  EXPECT_FALSE(r.captions);
  EXPECT_FALSE(r.count);
  EXPECT_FALSE(r.unparseable);
}

TEST(Response, Count) {
  const auto r = parse_response_text("3", TaskKind::count);
  ASSERT_TRUE(r.count);
  EXPECT_EQ(*r.count, 3);
  EXPECT_FALSE(r.intervals);
  EXPECT_EQ(*parse_response_text("There are 4 segments.", TaskKind::count).count, 4);
}

TEST(Response, InterleavedSwapFlag) {
  const auto r = parse_response_text("From 20 to 05, a man runs.", TaskKind::interleaved_full);
  ASSERT_TRUE(r.intervals && r.captions);
  EXPECT_EQ(*r.intervals, (std::vector<TokenSpan>{{5, 20}}));
  EXPECT_EQ(*r.captions, (std::vector<std::string>{"a man runs"}));
  EXPECT_TRUE(r.swapped);
}

TEST(Response, OutOfRangeTokenIsClampedAndFlagged) {
  const auto r = parse_response_text("From 10 to 150.", TaskKind::timestamps);
  EXPECT_EQ(*r.intervals, (std::vector<TokenSpan>{{10, 99}}));
  EXPECT_TRUE(r.clamped);
}

TEST(Response, CaptionsDropIntervalClauses) {
  const auto r = parse_response_text("From 00 to 10, A dog barks.\nFrom 12 to 40, It sleeps.",
                                     TaskKind::captions);
  EXPECT_EQ(*r.captions, (std::vector<std::string>{"A dog barks", "It sleeps"}));
  EXPECT_FALSE(r.intervals);
  EXPECT_EQ(*parse_response_text("A b. C d.", TaskKind::captions).captions,
            (std::vector<std::string>{"A b", "C d"}));
}

TEST(Response, NoGrammarMatchIsUnparseableNotAnException) {
  for (auto task : {TaskKind::count, TaskKind::timestamps, TaskKind::captions,
                    TaskKind::interleaved_full, TaskKind::tvg, TaskKind::clip_caption}) {
    const auto r = parse_response_text("", task);
    EXPECT_TRUE(r.unparseable) << to_string(task);
  }
  EXPECT_TRUE(parse_response_text("no numbers here", TaskKind::count).unparseable);
  EXPECT_TRUE(parse_response_text("nothing timed", TaskKind::timestamps).unparseable);
}

TEST(Response, NeverThrowsOnRandomText) {
  Rng rng(7);
  const std::string alphabet = "From to 0123456789.,\n ";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const auto len = rng.below(60);
    for (std::size_t k = 0; k < len; ++k) s.push_back(alphabet[rng.below(alphabet.size())]);
    for (auto task : {TaskKind::count, TaskKind::timestamps, TaskKind::captions,
                      TaskKind::interleaved_full}) {
      const auto r = parse_response_text(s, task);
      if (r.intervals)
        for (const auto& span : *r.intervals) {
          EXPECT_LE(span.start, span.end);
          EXPECT_GE(span.start, 0);
          EXPECT_LE(span.end, 99);
        }
    }
  }
}

TEST(Response, NormalizeCaption) {
  EXPECT_EQ(normalize_caption("  A   man\truns.  "), "A man runs");
  EXPECT_EQ(normalize_caption(", then he jumps!"), "then he jumps");
  EXPECT_EQ(normalize_caption("..."), "");
}

TEST(Types, EnumNamesRoundTrip) {
  for (auto task : {TaskKind::count, TaskKind::timestamps, TaskKind::captions,
                    TaskKind::interleaved_full, TaskKind::tvg, TaskKind::clip_caption})
    EXPECT_EQ(task_kind_from_string(to_string(task)), task);
  for (auto path : {PathKind::t_then_c, PathKind::c_then_t})
    EXPECT_EQ(path_kind_from_string(to_string(path)), path);
  EXPECT_THROW(task_kind_from_string("nope"), ValidationError);
  EXPECT_THROW(path_kind_from_string("nope"), ValidationError);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = c.between(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace dvckit
