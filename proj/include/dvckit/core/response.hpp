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
#include <charconv>
#include <cstddef>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/core/types.hpp"

namespace dvckit {

// Canonical caption text: whitespace runs collapsed to one space, leading
// separators and trailing sentence punctuation removed.
inline std::string normalize_caption(std::string_view raw) {
  std::string collapsed;
  collapsed.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(' ');
    pending_space = false;
    collapsed.push_back(c);
  }
  auto is_lead = [](char c) {
    return c == ',' || c == ';' || c == ':' || c == '-' || c == ' ';
  };
  auto is_trail = [](char c) {
    return c == '.' || c == '!' || c == '?' || c == ',' || c == ';' ||
           c == ':' || c == ' ';
  };
  std::size_t first = 0;
  while (first < collapsed.size() && is_lead(collapsed[first])) ++first;
  std::size_t last = collapsed.size();
  while (last > first && is_trail(collapsed[last - 1])) --last;
  return collapsed.substr(first, last - first);
}

namespace detail {

inline const std::regex& interval_clause() {
  static const std::regex re(R"(from\s+(\d+)\s+to\s+(\d+))",
                             std::regex::icase | std::regex::ECMAScript);
  return re;
}

// Saturating decimal parse; digit strings only.
inline long long parse_digits(std::string_view digits) {
  long long value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) return (1LL << 62);
  return value;
}

struct IntervalMatch {
  TokenSpan span;
  std::size_t begin = 0;  // clause start in the text
  std::size_t end = 0;    // one past the clause
};

inline std::vector<IntervalMatch> find_intervals(const std::string& text,
                                                 int max_token,
                                                 ParsedResponse& flags) {
  std::vector<IntervalMatch> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(),
                                      interval_clause());
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    long long a = parse_digits(m.str(1));
    long long b = parse_digits(m.str(2));
    if (a > max_token || b > max_token) flags.clamped = true;
    a = std::min<long long>(a, max_token);
    b = std::min<long long>(b, max_token);
    if (a > b) {
      std::swap(a, b);
      flags.swapped = true;
    }
    out.push_back({{static_cast<int>(a), static_cast<int>(b)},
                   static_cast<std::size_t>(m.position(0)),
                   static_cast<std::size_t>(m.position(0) + m.length(0))});
  }
  return out;
}

// Splits on '.' followed by whitespace or end of text, and on newlines.
inline std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto sentence = normalize_caption(current);
    if (!sentence.empty()) out.push_back(std::move(sentence));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush();
    } else if (c == '.' && (i + 1 == text.size() || text[i + 1] == ' ' ||
                            text[i + 1] == '\t' || text[i + 1] == '\n' ||
                            text[i + 1] == '\r')) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

inline std::optional<int> parse_count(const std::string& text) {
  static const std::regex bare(R"(^\s*(\d+)\s*\.?\s*$)");
  static const std::regex leading(R"((\d+))");
  std::smatch m;
  if (std::regex_match(text, m, bare) || std::regex_search(text, m, leading)) {
    long long v = parse_digits(m.str(1));
    if (v > (1LL << 30)) return std::nullopt;
    return static_cast<int>(v);
  }
  return std::nullopt;
}

}  // namespace detail

// Extracts the structured answer for `task` from free-form model text.
// Never throws: text with no grammar match comes back flagged unparseable.
inline ParsedResponse parse_response_text(std::string_view raw, TaskKind task,
                                          int max_token = 99) {
  ParsedResponse out;
  out.task = task;
  const std::string text(raw);

  switch (task) {
    case TaskKind::count: {
      out.count = detail::parse_count(text);
      out.unparseable = !out.count.has_value();
      break;
    }
    case TaskKind::timestamps:
    case TaskKind::tvg: {
      std::vector<TokenSpan> spans;
      for (auto& m : detail::find_intervals(text, max_token, out))
        spans.push_back(m.span);
      out.unparseable = spans.empty();
      if (!out.unparseable) out.intervals = std::move(spans);
      break;
    }
    case TaskKind::captions: {
      const std::string stripped =
          std::regex_replace(text, detail::interval_clause(), "");
      auto sentences = detail::split_sentences(stripped);
      out.unparseable = sentences.empty();
      if (!out.unparseable) out.captions = std::move(sentences);
      break;
    }
    case TaskKind::clip_caption: {
      auto caption = normalize_caption(
          std::regex_replace(text, detail::interval_clause(), ""));
      out.unparseable = caption.empty();
      if (!out.unparseable) out.captions = std::vector<std::string>{caption};
      break;
    }
    case TaskKind::interleaved_full: {
      const auto matches = detail::find_intervals(text, max_token, out);
      std::vector<TokenSpan> spans;
      std::vector<std::string> captions;
      for (std::size_t i = 0; i < matches.size(); ++i) {
        const std::size_t stop =
            i + 1 < matches.size() ? matches[i + 1].begin : text.size();
        spans.push_back(matches[i].span);
        captions.push_back(normalize_caption(
            std::string_view(text).substr(matches[i].end, stop - matches[i].end)));
      }
      out.unparseable = spans.empty();
      if (!out.unparseable) {
        out.intervals = std::move(spans);
        out.captions = std::move(captions);
      }
      break;
    }
  }
  return out;
}

}  // namespace dvckit
