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

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dvckit/text/cider.hpp"
#include "dvckit/text/meteor.hpp"
#include "dvckit/text/similarity.hpp"
#include "dvckit/text/stemmer.hpp"
#include "dvckit/text/tokenize.hpp"
#include "oracles.hpp"

namespace dvckit::text {
namespace {

TokenList toks(const std::string& s) { return tokenize(s); }

TEST(Tokenize, LowercasesAndDropsPunctuation) {
  EXPECT_EQ(tokenize("A man runs."), (TokenList{"a", "man", "runs"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("it's GOOD!!"), (TokenList{"its", "good"}));
  EXPECT_EQ(tokenize("  tabs\tand\nnewlines  "), (TokenList{"tabs", "and", "newlines"}));
  EXPECT_TRUE(tokenize("... !!").empty());
}

TEST(Porter, KnownWords) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"caresses", "caress"},   {"ponies", "poni"},         {"ties", "ti"},
      {"caress", "caress"},     {"cats", "cat"},            {"feed", "feed"},
      {"agreed", "agre"},       {"plastered", "plaster"},   {"bled", "bled"},
      {"motoring", "motor"},    {"sing", "sing"},           {"conflated", "conflat"},
      {"troubled", "troubl"},   {"sized", "size"},          {"hopping", "hop"},
      {"tanned", "tan"},        {"falling", "fall"},        {"hissing", "hiss"},
      {"fizzed", "fizz"},       {"failing", "fail"},        {"filing", "file"},
      {"happy", "happi"},       {"sky", "sky"},             {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"},    {"valenci", "valenc"},
      {"hesitanci", "hesit"},   {"digitizer", "digit"},     {"conformabli", "conform"},
      {"radicalli", "radic"},   {"differentli", "differ"},  {"vileli", "vile"},
      {"analogousli", "analog"}, {"vietnamization", "vietnam"},
      {"predication", "predic"}, {"operator", "oper"},      {"feudalism", "feudal"},
      {"decisiveness", "decis"}, {"hopefulness", "hope"},   {"callousness", "callous"},
      {"formaliti", "formal"},  {"sensitiviti", "sensit"},  {"sensibiliti", "sensibl"},
      {"triplicate", "triplic"}, {"formative", "form"},     {"formalize", "formal"},
      {"electriciti", "electr"}, {"electrical", "electr"},  {"hopeful", "hope"},
      {"goodness", "good"},     {"revival", "reviv"},       {"allowance", "allow"},
      {"inference", "infer"},   {"airliner", "airlin"},     {"gyroscopic", "gyroscop"},
      {"adjustable", "adjust"}, {"defensible", "defens"},   {"irritant", "irrit"},
      {"replacement", "replac"}, {"adjustment", "adjust"},  {"dependent", "depend"},
      {"adoption", "adopt"},    {"homologou", "homolog"},   {"communism", "commun"},
      {"activate", "activ"},    {"angulariti", "angular"},  {"homologous", "homolog"},
      {"effective", "effect"},  {"bowdlerize", "bowdler"},  {"probate", "probat"},
      {"rate", "rate"},         {"cease", "ceas"},          {"controll", "control"},
      {"roll", "roll"},         {"generalizations", "gener"}, {"oscillators", "oscil"},
      {"running", "run"},       {"runs", "run"}};
  for (const auto& [word, stem] : cases) EXPECT_EQ(porter_stem(word), stem) << word;
}

TEST(Porter, ShortAndNonAlphabeticWordsPassThrough) {
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("a"), "a");
  EXPECT_EQ(porter_stem("3d"), "3d");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(Meteor, IdenticalSentence) {
  const auto a = meteor_align(toks("a b c"), toks("a b c"), false);
  EXPECT_EQ(a.matches(), 3u);
  EXPECT_EQ(a.chunks, 1u);
  const double expected = 1.0 - 0.5 * std::pow(1.0 / 3.0, 3.0);
  EXPECT_NEAR(meteor_score(toks("a b c"), toks("a b c")), expected, 1e-12);
  EXPECT_NEAR(meteor_score(toks("a b c"), toks("a b c")), 0.98148, 1e-5);
}

TEST(Meteor, RotatedSentence) {
  const auto a = meteor_align(toks("c a b"), toks("a b c"), false);
  EXPECT_EQ(a.matches(), 3u);
  EXPECT_EQ(a.chunks, 2u);
  EXPECT_NEAR(meteor_score(toks("c a b"), toks("a b c")), 0.85185, 1e-5);
}

TEST(Meteor, DisjointAndEmpty) {
  EXPECT_EQ(meteor_score(toks("x y"), toks("a b c")), 0.0);
  EXPECT_EQ(meteor_score({}, toks("a b c")), 0.0);
  EXPECT_EQ(meteor_score(toks("a"), {}), 0.0);
}

TEST(Meteor, PrecisionRecallWeighting) {
  // m = 2, |cand| = 2, |ref| = 4, one chunk.
  const double got = meteor_score(toks("a b"), toks("a b c d"));
  EXPECT_NEAR(got, oracle::meteor_closed_form(2, 1, 2, 4), 1e-12);
}

TEST(Meteor, PrefersFewerChunksAmongMaximalMatchings) {
  // "the" can pair with either reference occurrence; only one keeps the
  // match contiguous.
  const auto a = meteor_align(toks("the cat"), toks("the dog saw the cat"), false);
  EXPECT_EQ(a.matches(), 2u);
  EXPECT_EQ(a.chunks, 1u);
}

TEST(Meteor, StemmingStageAddsMatches) {
  MeteorParams stem;
  stem.use_stemming = true;
  EXPECT_EQ(meteor_align(toks("he runs"), toks("he running"), false).matches(), 1u);
  EXPECT_EQ(meteor_align(toks("he runs"), toks("he running"), true).matches(), 2u);
  EXPECT_GT(meteor_score(toks("he runs"), toks("he running"), stem),
            meteor_score(toks("he runs"), toks("he running")));
}

TEST(Meteor, ExactMatchesAreFixedBeforeStems) {
  // "run" matches exactly; the stem stage must not steal it.
  const auto a = meteor_align(toks("run running"), toks("running run"), true);
  EXPECT_EQ(a.matches(), 2u);
  for (auto [c, r] : a.pairs) EXPECT_EQ(c == 0 ? 1u : 0u, r);
}

TEST(Meteor, RejectsBadParameters) {
  MeteorParams p;
  p.alpha = 1.5;
  EXPECT_THROW(meteor_score(toks("a"), toks("a"), p), ValidationError);
  p = {};
  p.gamma_frag = -0.1;
  EXPECT_THROW(meteor_score(toks("a"), toks("a"), p), ValidationError);
}

TEST(Meteor, ChunkMinimizationMatchesBruteForceUpToFive) {
  // Full length-6 enumeration runs in the acceptance binary.
  const auto lists = oracle::all_token_lists({"a", "b", "c"}, 5);
  for (std::size_t x = 0; x < lists.size(); x += 3) {
    for (std::size_t y = 0; y < lists.size(); y += 7) {
      const auto& cand = lists[x];
      const auto& ref = lists[y];
      const auto want = oracle::brute_force_alignment(cand, ref);
      const auto got = meteor_align(cand, ref, false);
      ASSERT_TRUE(got.exact_search);
      ASSERT_EQ(got.matches(), want.matches);
      ASSERT_EQ(got.chunks, want.chunks);
    }
  }
}

TEST(Meteor, LongSentencesStayValid) {
  TokenList cand, ref;
  for (int i = 0; i < 91; ++i) {
    cand.push_back("w" + std::to_string(i % 7));
    ref.push_back("w" + std::to_string((i * 3) % 7));
  }
  const auto a = meteor_align(cand, ref, false);
  EXPECT_EQ(a.matches(), 91u);  // same multiset of tokens
  EXPECT_LE(a.chunks, a.matches());
  std::vector<bool> seen(ref.size(), false);
  for (auto [c, r] : a.pairs) {
    EXPECT_EQ(cand[c], ref[r]);
    EXPECT_FALSE(seen[r]);
    seen[r] = true;
  }
  const double s = meteor_score(cand, ref);
  EXPECT_GT(s, 0.0);
  EXPECT_LE(s, 1.0);
}

TEST(NormalizedMeteor, EchoScoresOne) {
  const NormalizedMeteorSimilarity sim{};
  EXPECT_DOUBLE_EQ(sim(toks("a man runs"), toks("a man runs")), 1.0);
  EXPECT_LT(sim(toks("a man runs"), toks("a man walks")), 1.0);
  EXPECT_EQ(sim({}, toks("x")), 0.0);
}

TEST(Cider, DocumentFrequencies) {
  const DocFreqTable df({{"a", "b"}, {"a", "c"}});
  EXPECT_EQ(df.frequency("a"), 2u);
  EXPECT_EQ(df.frequency("b"), 1u);
  EXPECT_EQ(df.frequency("a b"), 1u);
  EXPECT_EQ(df.corpus_size(), 2u);
  EXPECT_DOUBLE_EQ(df.idf("a"), 0.0);
  EXPECT_DOUBLE_EQ(df.idf("b"), std::log(2.0));
  EXPECT_DOUBLE_EQ(df.idf("zzz"), 0.0);
}

TEST(Cider, SingleSentenceCorpus) {
  const DocFreqTable df({{"a", "b", "a"}});
  for (const auto* g : {"a", "b", "a b", "b a", "a b a"}) EXPECT_EQ(df.frequency(g), 1u);
}

TEST(Cider, MaxNBoundsStoredGrams) {
  const DocFreqTable df({{"a", "b", "c"}}, 1);
  EXPECT_EQ(df.size(), 3u);
  EXPECT_FALSE(df.contains("a b"));
}

TEST(Cider, EmptyCorpusIsAnError) {
  EXPECT_THROW(DocFreqTable({}), ValidationError);
}

TEST(Cider, SelfScoreOfThreeTokenSentence) {
  const DocFreqTable df({{"a", "b", "c"}, {"d", "e"}});
  EXPECT_NEAR(cider_score({"a", "b", "c"}, {"a", "b", "c"}, df), 0.75, 1e-12);
}

TEST(Cider, DisjointSentencesScoreZero) {
  const DocFreqTable df({{"a", "b", "c"}, {"d", "e"}, {"f"}});
  EXPECT_EQ(cider_score({"a", "b"}, {"d", "e"}, df), 0.0);
}

TEST(Cider, UbiquitousGramsCarryNoWeight) {
  // "a" is in every document, so a candidate sharing only "a" scores 0.
  const DocFreqTable df({{"a", "b"}, {"a", "c"}});
  EXPECT_EQ(cider_score({"a", "c"}, {"a", "b"}, df), 0.0);
}

TEST(Cider, SimilarityAdapterOrdersArguments) {
  auto df = std::make_shared<const DocFreqTable>(std::vector<TokenList>{{"a", "b"}, {"c"}});
  const CiderSimilarity sim{df};
  EXPECT_DOUBLE_EQ(sim({"a", "b"}, {"a", "b"}), cider_score({"a", "b"}, {"a", "b"}, *df));
}

}  // namespace
}  // namespace dvckit::text
