// Copyright 2026 The benchdyn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BENCHDYN_DOCUMENT_H_
#define BENCHDYN_DOCUMENT_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace benchdyn {

// Configuration problem attributable to a named field of an input document
// or command line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message),
        field_(std::move(field)),
        message_(message) {}
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

// TOML and JSON documents are both read into the same JSON value tree.
// `format_hint` is "json", "toml" or empty (sniffed from the content).
nlohmann::json parse_document(std::string_view text,
                              std::string_view format_hint = "");
nlohmann::json load_document(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Reads a number that may be written as a JSON number or as an exact
// fraction string such as "1/3".
double number_or_fraction(const nlohmann::json& value, const std::string& field);

}  // namespace benchdyn

#endif  // BENCHDYN_DOCUMENT_H_
