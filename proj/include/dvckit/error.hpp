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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dvckit {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside an operation's contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A corpus or batch document could not be parsed. Carries the byte offset
// into the document when one can be attributed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::optional<std::size_t> byte_offset,
             std::string location = {})
      : Error(format(what, byte_offset, location)),
        byte_offset_(byte_offset),
        location_(std::move(location)) {}

  std::optional<std::size_t> byte_offset() const { return byte_offset_; }
  const std::string& location() const { return location_; }

 private:
  static std::string format(const std::string& what,
                            std::optional<std::size_t> offset,
                            const std::string& location) {
    std::string out = "parse error";
    if (offset) out += " at byte " + std::to_string(*offset);
    if (!location.empty()) out += " (" + location + ")";
    out += ": " + what;
    return out;
  }

  std::optional<std::size_t> byte_offset_;
  std::string location_;
};

// File system failure (missing input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dvckit
