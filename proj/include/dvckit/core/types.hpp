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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/error.hpp"

namespace dvckit {

enum class ParseMode { lenient, strict };

// Closed time span in seconds.
struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }

  bool well_formed() const {
    return std::isfinite(start) && std::isfinite(end) && start >= 0.0 &&
           start <= end;
  }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

struct Event {
  TimeInterval interval;
  std::string caption;

  friend bool operator==(const Event&, const Event&) = default;
};

// Ground truth for one video under one reference set.
struct VideoAnnotation {
  std::string video_id;
  double duration = 0.0;
  std::vector<Event> events;
  std::string reference_set_id;

  std::size_t event_count() const { return events.size(); }
};

// video_id -> predicted events. Ordered so that every corpus reduction
// visits videos in the same order regardless of document order.
using PredictionSet = std::map<std::string, std::vector<Event>>;

enum class Speaker { prompter, responder };

enum class TaskKind {
  count,
  timestamps,
  captions,
  interleaved_full,
  tvg,
  clip_caption,
};

enum class ConversationPath { t_then_c, c_then_t, single_turn, tvg, clip_caption };

// The two multi-turn reasoning orders for dense captioning.
enum class PathKind { t_then_c, c_then_t };

struct Turn {
  Speaker speaker = Speaker::prompter;
  std::string text;
  TaskKind task = TaskKind::count;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Conversation {
  std::string video_id;
  ConversationPath path = ConversationPath::single_turn;
  std::vector<Turn> turns;

  friend bool operator==(const Conversation&, const Conversation&) = default;
};

// Interval expressed in quantized time tokens (0..max_token).
struct TokenSpan {
  int start = 0;
  int end = 0;

  TimeInterval to_seconds(double duration, int max_token = 99) const {
    return {duration * start / max_token, duration * end / max_token};
  }

  TimeInterval as_interval() const {
    return {static_cast<double>(start), static_cast<double>(end)};
  }

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct ParsedResponse {
  TaskKind task = TaskKind::count;
  std::optional<int> count;
  std::optional<std::vector<TokenSpan>> intervals;
  std::optional<std::vector<std::string>> captions;

  bool unparseable = false;
  bool clamped = false;  // an interval token fell outside [0, max_token]
  bool swapped = false;  // an interval was given end-first

  friend bool operator==(const ParsedResponse&, const ParsedResponse&) = default;
};

// ---------------------------------------------------------------------------
// Enum names used in every file format.

inline std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::count: return "count";
    case TaskKind::timestamps: return "timestamps";
    case TaskKind::captions: return "captions";
    case TaskKind::interleaved_full: return "interleaved_full";
    case TaskKind::tvg: return "tvg";
    case TaskKind::clip_caption: return "clip_caption";
  }
  return "count";
}

inline std::string_view to_string(ConversationPath path) {
  switch (path) {
    case ConversationPath::t_then_c: return "t_then_c";
    case ConversationPath::c_then_t: return "c_then_t";
    case ConversationPath::single_turn: return "single_turn";
    case ConversationPath::tvg: return "tvg";
    case ConversationPath::clip_caption: return "clip_caption";
  }
  return "single_turn";
}

inline std::string_view to_string(PathKind path) {
  return path == PathKind::t_then_c ? "t_then_c" : "c_then_t";
}

inline ConversationPath as_conversation_path(PathKind path) {
  return path == PathKind::t_then_c ? ConversationPath::t_then_c
                                    : ConversationPath::c_then_t;
}

inline TaskKind task_kind_from_string(std::string_view s) {
  if (s == "count") return TaskKind::count;
  if (s == "timestamps") return TaskKind::timestamps;
  if (s == "captions") return TaskKind::captions;
  if (s == "interleaved_full") return TaskKind::interleaved_full;
  if (s == "tvg") return TaskKind::tvg;
  if (s == "clip_caption") return TaskKind::clip_caption;
  throw ValidationError("unknown task kind '" + std::string(s) + "'");
}

inline PathKind path_kind_from_string(std::string_view s) {
  if (s == "t_then_c") return PathKind::t_then_c;
  if (s == "c_then_t") return PathKind::c_then_t;
  throw ValidationError("unknown reasoning path '" + std::string(s) +
                        "' (expected t_then_c or c_then_t)");
}

}  // namespace dvckit
