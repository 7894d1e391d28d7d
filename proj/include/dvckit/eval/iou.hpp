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
#include <span>
#include <vector>

#include "dvckit/core/types.hpp"
#include "dvckit/text/tokenize.hpp"

namespace dvckit::eval {

// Temporal IoU. Two identical zero-length intervals have IoU 1; any other
// pair with a zero-length union has IoU 0.
inline double interval_iou(const TimeInterval& a, const TimeInterval& b) {
  const double inter =
      std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
  const double uni = a.length() + b.length() - inter;
  if (uni <= 0.0) return a == b ? 1.0 : 0.0;
  return inter / uni;
}

struct TokenizedEvent {
  TimeInterval interval;
  text::TokenList tokens;
};

inline std::vector<TokenizedEvent> tokenize_events(std::span<const Event> events) {
  std::vector<TokenizedEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back({e.interval, text::tokenize(e.caption)});
  return out;
}

}  // namespace dvckit::eval
