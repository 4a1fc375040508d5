// Copyright 2026 The Transdir Authors.
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

#include <string>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/text.h"

namespace transdir {
namespace {

bool has_space_or_control(std::string_view s) {
  for (char c : s) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7f) return true;
  }
  return false;
}

}  // namespace

DirectionLabel sentence_label(const TaggedSentence& sentence) {
  return direction_of(sentence.origin, LanguagePair::parse(sentence.pair));
}

std::string validate_sentence(const TaggedSentence& sentence) {
  if (sentence.tokens.empty()) return "sentence has no tokens";
  if (sentence.tokens.size() != sentence.tags.size()) {
    return "tokens/tags length mismatch (" +
           std::to_string(sentence.tokens.size()) + " vs " +
           std::to_string(sentence.tags.size()) + ")";
  }
  for (const std::string& t : sentence.tokens) {
    if (t.empty() || has_space_or_control(t)) return "invalid token '" + t + "'";
  }
  for (const std::string& t : sentence.tags) {
    if (t.empty() || has_space_or_control(t)) return "invalid tag '" + t + "'";
  }
  try {
    sentence_label(sentence);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::vector<TaggedSentence> parse_pretagged(std::string_view content,
                                            std::string_view source_name) {
  std::vector<TaggedSentence> out;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    auto fail = [&](const std::string& what) {
      return DataError(std::string(source_name) + ":" +
                       std::to_string(line_number) + ": " + what);
    };
    TaggedSentence s;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      s.tokens = j.at("tokens").get<std::vector<std::string>>();
      s.tags = j.at("tags").get<std::vector<std::string>>();
      s.origin = j.at("origin").get<std::string>();
      s.pair = j.at("pair").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw fail(std::string("malformed record: ") + e.what());
    }
    if (std::string problem = validate_sentence(s); !problem.empty()) {
      throw fail(problem);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TaggedSentence> load_pretagged(const std::filesystem::path& path) {
  return parse_pretagged(internal::read_file(path), path.string());
}

std::string format_pretagged(std::span<const TaggedSentence> sentences) {
  std::string out;
  for (const TaggedSentence& s : sentences) {
    nlohmann::ordered_json j;
    j["tokens"] = s.tokens;
    j["tags"] = s.tags;
    j["origin"] = s.origin;
    j["pair"] = s.pair;
    out.append(j.dump());
    out.push_back('\n');
  }
  return out;
}

void write_pretagged(const std::filesystem::path& path,
                     std::span<const TaggedSentence> sentences) {
  internal::write_file(path, format_pretagged(sentences));
}

}  // namespace transdir
