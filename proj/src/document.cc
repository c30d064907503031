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

#include "benchdyn/document.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace benchdyn {
namespace {

nlohmann::json from_toml(const toml::node& node) {
  if (const auto* table = node.as_table()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : *table) {
      out[std::string(key.str())] = from_toml(value);
    }
    return out;
  }
  if (const auto* array = node.as_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& value : *array) out.push_back(from_toml(value));
    return out;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  throw ConfigError("document", "unsupported TOML value type (dates are not accepted)");
}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

}  // namespace

nlohmann::json parse_document(std::string_view text, std::string_view format_hint) {
  const bool json = format_hint == "json" ||
                    (format_hint != "toml" && looks_like_json(text));
  if (json) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("document", std::string("invalid JSON: ") + e.what());
    }
  }
  try {
    toml::table table = toml::parse(text);
    return from_toml(table);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "invalid TOML: " << e.description() << " at line "
        << e.source().begin.line;
    throw ConfigError("document", msg.str());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json load_document(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::string ext = path.extension().string();
  std::string hint;
  if (ext == ".json") hint = "json";
  if (ext == ".toml") hint = "toml";
  return parse_document(text, hint);
}

double number_or_fraction(const nlohmann::json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    const auto slash = s.find('/');
    auto parse = [&](std::string_view part) {
      double x = 0.0;
      const auto* first = part.data();
      const auto* last = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(first, last, x);
      if (ec != std::errc() || ptr != last) {
        throw ConfigError(field, "cannot parse number '" + s + "'");
      }
      return x;
    };
    if (slash == std::string::npos) return parse(s);
    const double num = parse(std::string_view(s).substr(0, slash));
    const double den = parse(std::string_view(s).substr(slash + 1));
    if (den == 0.0) throw ConfigError(field, "zero denominator in '" + s + "'");
    return num / den;
  }
  throw ConfigError(field, "expected a number or a fraction string");
}

}  // namespace benchdyn
