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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dvckit/core/types.hpp"
#include "dvckit/text/tokenize.hpp"

namespace dvckit {

struct ParseOptions {
  ParseMode mode = ParseMode::lenient;
  std::string reference_set_id = "0";
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(first, last - first + 1));
}

// Offset of the nth (0-based) occurrence of `"key":` in a JSON document.
inline std::optional<std::size_t> locate_key(std::string_view document,
                                             const std::string& key,
                                             std::size_t nth = 0) {
  const std::string quoted = nlohmann::json(key).dump();
  std::size_t pos = 0;
  std::size_t seen = 0;
  while ((pos = document.find(quoted, pos)) != std::string_view::npos) {
    std::size_t after = pos + quoted.size();
    while (after < document.size() &&
           (document[after] == ' ' || document[after] == '\t' ||
            document[after] == '\n' || document[after] == '\r'))
      ++after;
    if (after < document.size() && document[after] == ':') {
      if (seen == nth) return pos;
      ++seen;
    }
    pos += quoted.size();
  }
  return std::nullopt;
}

// Parses a JSON object document, rejecting duplicate top-level keys, which
// nlohmann would otherwise silently overwrite.
inline ordered_json parse_top_level_object(std::string_view document,
                                           std::string_view what) {
  // Keys of the top-level object and of a top-level "results" wrapper.
  std::vector<std::string> keys;
  std::vector<std::string> wrapped_keys;
  std::string parent_key;
  std::optional<std::string> duplicate;
  auto note = [&](std::vector<std::string>& seen, std::string key) {
    if (!duplicate && std::find(seen.begin(), seen.end(), key) != seen.end())
      duplicate = key;
    seen.push_back(std::move(key));
  };
  auto on_event = [&](int depth, nlohmann::json::parse_event_t event,
                      ordered_json& parsed) {
    if (event != nlohmann::json::parse_event_t::key || !parsed.is_string())
      return true;
    if (depth == 1) {
      parent_key = parsed.get<std::string>();
      note(keys, parent_key);
    } else if (depth == 2 && parent_key == "results") {
      note(wrapped_keys, parsed.get<std::string>());
    }
    return true;
  };

  ordered_json root;
  try {
    root = ordered_json::parse(document.begin(), document.end(), on_event);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": malformed JSON (" + e.what() + ")",
                     e.byte == 0 ? 0 : e.byte - 1);
  }
  if (duplicate) {
    throw ParseError("duplicate video_id '" + *duplicate + "'",
                     locate_key(document, *duplicate, 1), *duplicate);
  }
  if (!root.is_object())
    throw ParseError(std::string(what) + ": top-level value must be an object",
                     0);
  return root;
}

struct SchemaContext {
  std::string_view document;
  std::string video_id;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, locate_key(document, video_id), video_id);
  }
};

inline double require_number(const ordered_json& value, const SchemaContext& ctx,
                             std::string_view field) {
  if (!value.is_number())
    ctx.fail("field '" + std::string(field) + "' must be a number");
  return value.get<double>();
}

inline std::pair<double, double> require_pair(const ordered_json& value,
                                              const SchemaContext& ctx,
                                              std::string_view field) {
  if (!value.is_array() || value.size() != 2)
    ctx.fail("'" + std::string(field) + "' entries must be [start, end] pairs");
  return {require_number(value[0], ctx, field),
          require_number(value[1], ctx, field)};
}

// Swaps a reversed pair (lenient) or rejects it (strict), then clamps to
// [0, duration].
inline TimeInterval normalize_interval(double start, double end,
                                       std::optional<double> duration,
                                       ParseMode mode, const SchemaContext& ctx) {
  if (start > end) {
    if (mode == ParseMode::strict) {
      ctx.fail("event start " + std::to_string(start) + " is after end " +
               std::to_string(end) + " in video '" + ctx.video_id + "'");
    }
    std::swap(start, end);
  }
  start = std::max(start, 0.0);
  end = std::max(end, 0.0);
  if (duration) {
    start = std::min(start, *duration);
    end = std::min(end, *duration);
  }
  return {start, end};
}

// Returns the trimmed caption, or nullopt when it has no tokens (lenient).
inline std::optional<std::string> accept_caption(const ordered_json& value,
                                                 ParseMode mode,
                                                 const SchemaContext& ctx) {
  if (!value.is_string()) ctx.fail("captions must be strings");
  std::string caption = trim(value.get<std::string>());
  if (text::tokenize(caption).empty()) {
    if (mode == ParseMode::strict)
      ctx.fail("empty caption in video '" + ctx.video_id + "'");
    return std::nullopt;
  }
  return caption;
}

}  // namespace detail

// Reads a ground-truth document of the shape
//   { "<video_id>": { "duration": s, "timestamps": [[s, e], ...],
//                     "sentences": ["...", ...] }, ... }
// Every annotation is tagged with options.reference_set_id. Video and event
// order follow the document.
inline std::vector<VideoAnnotation> parse_annotations(
    std::string_view document, const ParseOptions& options = {}) {
  const auto root = detail::parse_top_level_object(document, "annotations");
  std::vector<VideoAnnotation> out;
  out.reserve(root.size());

  for (const auto& [video_id, entry] : root.items()) {
    const detail::SchemaContext ctx{document, video_id};
    if (!entry.is_object()) ctx.fail("annotation entry must be an object");
    if (!entry.contains("duration")) ctx.fail("missing 'duration'");
    if (!entry.contains("timestamps")) ctx.fail("missing 'timestamps'");
    if (!entry.contains("sentences")) ctx.fail("missing 'sentences'");

    VideoAnnotation ann;
    ann.video_id = video_id;
    ann.reference_set_id = options.reference_set_id;
    ann.duration = detail::require_number(entry["duration"], ctx, "duration");
    if (!(ann.duration > 0.0))
      ctx.fail("duration must be > 0 for video '" + video_id + "'");

    const auto& stamps = entry["timestamps"];
    const auto& sentences = entry["sentences"];
    if (!stamps.is_array() || !sentences.is_array())
      ctx.fail("'timestamps' and 'sentences' must be arrays");
    if (stamps.size() != sentences.size())
      ctx.fail("'timestamps' and 'sentences' lengths differ (" +
               std::to_string(stamps.size()) + " vs " +
               std::to_string(sentences.size()) + ")");

    for (std::size_t i = 0; i < stamps.size(); ++i) {
      auto [s, e] = detail::require_pair(stamps[i], ctx, "timestamps");
      auto interval =
          detail::normalize_interval(s, e, ann.duration, options.mode, ctx);
      auto caption = detail::accept_caption(sentences[i], options.mode, ctx);
      if (!caption) continue;
      ann.events.push_back({interval, std::move(*caption)});
    }

    if (ann.events.empty()) {
      if (options.mode == ParseMode::strict)
        ctx.fail("video '" + video_id + "' has no events");
      continue;
    }
    out.push_back(std::move(ann));
  }
  return out;
}

// Reads a prediction document of the shape
//   { "<video_id>": [ { "timestamp": [s, e], "sentence": "..." }, ... ] }
// optionally wrapped as { "results": { ... } }.
inline PredictionSet parse_predictions(std::string_view document,
                                       const ParseOptions& options = {}) {
  auto root = detail::parse_top_level_object(document, "predictions");
  if (root.contains("results") && root["results"].is_object()) {
    detail::ordered_json results = std::move(root["results"]);
    root = std::move(results);
  }

  PredictionSet out;
  for (const auto& [video_id, entry] : root.items()) {
    const detail::SchemaContext ctx{document, video_id};
    if (out.contains(video_id))
      throw ParseError("duplicate video_id '" + video_id + "'",
                       detail::locate_key(document, video_id, 1), video_id);
    if (!entry.is_array()) ctx.fail("prediction entry must be an array");

    std::vector<Event> events;
    for (const auto& item : entry) {
      if (!item.is_object() || !item.contains("timestamp") ||
          !item.contains("sentence"))
        ctx.fail("prediction items need 'timestamp' and 'sentence'");
      auto [s, e] = detail::require_pair(item["timestamp"], ctx, "timestamp");
      auto interval =
          detail::normalize_interval(s, e, std::nullopt, options.mode, ctx);
      auto caption = detail::accept_caption(item["sentence"], options.mode, ctx);
      if (!caption) continue;
      events.push_back({interval, std::move(*caption)});
    }
    out.emplace(video_id, std::move(events));
  }
  return out;
}

}  // namespace dvckit
