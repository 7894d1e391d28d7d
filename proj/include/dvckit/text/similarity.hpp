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
#include <concepts>
#include <memory>
#include <utility>

#include "dvckit/text/cider.hpp"
#include "dvckit/text/meteor.hpp"
#include "dvckit/text/tokenize.hpp"

namespace dvckit::text {

// Caption similarity called as sim(reference_tokens, candidate_tokens).
template <typename S>
concept CaptionSimilarity =
    requires(const S& s, const TokenList& ref, const TokenList& cand) {
      { s(ref, cand) } -> std::convertible_to<double>;
    };

struct MeteorSimilarity {
  MeteorParams params;

  double operator()(const TokenList& ref, const TokenList& cand) const {
    return meteor_score(cand, ref, params);
  }
};

// METEOR divided by the reference's score against itself, so that a
// token-identical candidate scores exactly 1. The self score is the maximum
// any candidate can reach against that reference.
struct NormalizedMeteorSimilarity {
  MeteorParams params;

  double operator()(const TokenList& ref, const TokenList& cand) const {
    if (ref.empty() || cand.empty()) return 0.0;
    const double self = meteor_score(ref, ref, params);
    if (self <= 0.0) return 0.0;
    return std::min(1.0, meteor_score(cand, ref, params) / self);
  }
};

struct CiderSimilarity {
  std::shared_ptr<const DocFreqTable> df;

  double operator()(const TokenList& ref, const TokenList& cand) const {
    return cider_score(cand, ref, *df);
  }
};

}  // namespace dvckit::text
