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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dvckit/error.hpp"

namespace dvckit::io {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

struct JsonlLine {
  std::size_t number = 0;  // 1-based
  std::size_t offset = 0;  // byte offset of the line start
  std::string text;
};

// Non-blank lines of a JSON Lines document.
inline std::vector<JsonlLine> jsonl_lines(std::string_view text) {
  std::vector<JsonlLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++number;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos)
      out.push_back({number, pos, std::string(line)});
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace dvckit::io
