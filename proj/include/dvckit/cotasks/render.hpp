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
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/core/response.hpp"
#include "dvckit/core/types.hpp"

namespace dvckit::cotasks {

// One instruction string per task.
struct Templates {
  static constexpr std::string_view kCount =
      "How many of time segments can this video breakdown into?";
  static constexpr std::string_view kSegments =
      "Can you breakdown the video into different time segments?";
  static constexpr std::string_view kCaptionsGivenSegments =
      "Can you describe what happened in each of these time segments?";
  static constexpr std::string_view kExplain =
      "Can you explain what happened in the video?";
  static constexpr std::string_view kSegmentsGivenCaptions =
      "What are the time segments for each event?";
  static constexpr std::string_view kSingleTurn =
      "Could you please outline the incidents that occurred at various "
      "timestamps in the video?";
  // "<caption>" is substituted.
  static constexpr std::string_view kGrounding =
      "During which frames can we see <caption> in the video?";
  // "<start>" and "<end>" are substituted.
  static constexpr std::string_view kClipCaption =
      "Can you describe what occurred from <start> to <end> in the video?";
};

// round-half-up(max_token * t / duration), clamped to [0, max_token].
inline int quantize_time(double t, double duration, int max_token = 99,
                         ParseMode mode = ParseMode::lenient) {
  if (!(duration > 0.0)) throw ValidationError("duration must be > 0");
  if (max_token < 1) throw ValidationError("quantization max must be >= 1");
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
  if (t < 0.0 || t > duration) {
    if (mode == ParseMode::strict)
      throw ValidationError("time " + std::to_string(t) + " outside [0, " +
                            std::to_string(duration) + "]");
    t = std::clamp(t, 0.0, duration);
  }
  const double scaled = static_cast<double>(max_token) * t / duration;
  const auto token = static_cast<int>(std::floor(scaled + 0.5));
  return std::clamp(token, 0, max_token);
}

inline std::string format_token(int token) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", token);
  return buf;
}

inline TokenSpan quantize_interval(const TimeInterval& interval, double duration,
                                   int max_token = 99) {
  return {quantize_time(interval.start, duration, max_token),
          quantize_time(interval.end, duration, max_token)};
}

inline std::string render_span(const TokenSpan& span) {
  return "From " + format_token(span.start) + " to " + format_token(span.end);
}

// "From SS to EE. From SS to EE."
inline std::string render_span_list(const std::vector<TokenSpan>& spans) {
  std::string out;
  for (const auto& s : spans) {
    if (!out.empty()) out += ' ';
    out += render_span(s) + ".";
  }
  return out;
}

// "Caption one. Caption two."
inline std::string render_caption_list(const std::vector<std::string>& captions) {
  std::string out;
  for (const auto& c : captions) {
    if (!out.empty()) out += ' ';
    out += c + ".";
  }
  return out;
}

// "From SS to EE, caption." one event per line.
inline std::string render_interleaved(const std::vector<TokenSpan>& spans,
                                      const std::vector<std::string>& captions) {
  std::string out;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (!out.empty()) out += '\n';
    out += render_span(spans[i]) + ", " + captions[i] + ".";
  }
  return out;
}

inline std::string substitute(std::string_view pattern, std::string_view key,
                              std::string_view value) {
  std::string out(pattern);
  const auto pos = out.find(key);
  if (pos != std::string::npos) out.replace(pos, key.size(), value);
  return out;
}

// Quantized spans and canonical captions of an annotation, in event order.
struct RenderedEvents {
  std::vector<TokenSpan> spans;
  std::vector<std::string> captions;
};

inline RenderedEvents rendered_events(const VideoAnnotation& ann, int max_token = 99) {
  RenderedEvents out;
  for (const auto& e : ann.events) {
    out.spans.push_back(quantize_interval(e.interval, ann.duration, max_token));
    out.captions.push_back(normalize_caption(e.caption));
  }
  return out;
}

namespace detail {

inline void add_exchange(Conversation& conv, std::string_view prompt,
                         std::string response, TaskKind task) {
  conv.turns.push_back({Speaker::prompter, std::string(prompt), task});
  conv.turns.push_back({Speaker::responder, std::move(response), task});
}

}  // namespace detail

// Three-exchange CoTasks conversation: count first, then timestamps and
// captions in the order the path prescribes.
inline Conversation render_cotasks_sample(const VideoAnnotation& ann, PathKind path,
                                          int max_token = 99) {
  if (ann.events.empty()) throw ValidationError("annotation has no events");
  const auto ev = rendered_events(ann, max_token);
  Conversation conv;
  conv.video_id = ann.video_id;
  conv.path = as_conversation_path(path);
  detail::add_exchange(conv, Templates::kCount, std::to_string(ann.events.size()),
                       TaskKind::count);
  if (path == PathKind::t_then_c) {
    detail::add_exchange(conv, Templates::kSegments, render_span_list(ev.spans),
                         TaskKind::timestamps);
    detail::add_exchange(conv, Templates::kCaptionsGivenSegments,
                         render_interleaved(ev.spans, ev.captions),
                         TaskKind::captions);
  } else {
    detail::add_exchange(conv, Templates::kExplain,
                         render_caption_list(ev.captions), TaskKind::captions);
    detail::add_exchange(conv, Templates::kSegmentsGivenCaptions,
                         render_span_list(ev.spans), TaskKind::timestamps);
  }
  return conv;
}

enum class AuxiliaryKind { single_turn, tvg, clip_caption };

inline Conversation render_auxiliary_sample(const VideoAnnotation& ann,
                                            AuxiliaryKind kind,
                                            std::size_t event_index = 0,
                                            int max_token = 99) {
  if (ann.events.empty()) throw ValidationError("annotation has no events");
  const auto ev = rendered_events(ann, max_token);
  Conversation conv;
  conv.video_id = ann.video_id;
  if (kind == AuxiliaryKind::single_turn) {
    conv.path = ConversationPath::single_turn;
    detail::add_exchange(conv, Templates::kSingleTurn,
                         render_interleaved(ev.spans, ev.captions),
                         TaskKind::interleaved_full);
    return conv;
  }
  if (event_index >= ann.events.size())
    throw ValidationError("event index " + std::to_string(event_index) +
                          " out of range for video '" + ann.video_id + "' with " +
                          std::to_string(ann.events.size()) + " events");
  const auto& span = ev.spans[event_index];
  const auto& caption = ev.captions[event_index];
  if (kind == AuxiliaryKind::tvg) {
    conv.path = ConversationPath::tvg;
    detail::add_exchange(conv, substitute(Templates::kGrounding, "<caption>", caption),
                         render_span(span) + ".", TaskKind::tvg);
  } else {
    conv.path = ConversationPath::clip_caption;
    const auto prompt = substitute(
        substitute(Templates::kClipCaption, "<start>", format_token(span.start)),
        "<end>", format_token(span.end));
    detail::add_exchange(conv, prompt, caption + ".", TaskKind::clip_caption);
  }
  return conv;
}

// The prompt sequence used at inference time for a path.
inline std::vector<std::string> inference_prompts(PathKind path) {
  if (path == PathKind::t_then_c)
    return {std::string(Templates::kCount), std::string(Templates::kSegments),
            std::string(Templates::kCaptionsGivenSegments)};
  return {std::string(Templates::kCount), std::string(Templates::kExplain),
          std::string(Templates::kSegmentsGivenCaptions)};
}

}  // namespace dvckit::cotasks
