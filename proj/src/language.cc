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

#include "transdir/language.h"

#include "transdir/errors.h"

namespace transdir {

bool is_language_code(std::string_view code) {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' &&
         code[1] >= 'a' && code[1] <= 'z';
}

LanguagePair::LanguagePair(std::string foreign) : foreign_(std::move(foreign)) {
  if (!is_language_code(foreign_)) {
    throw ConfigError("invalid language code '" + foreign_ + "'");
  }
  if (foreign_ == kEnglish) {
    throw ConfigError("the foreign side of a pair cannot be English");
  }
}

LanguagePair LanguagePair::parse(std::string_view text) {
  if (text.size() == 5 && (text[2] == '-' || text[2] == '_') &&
      text.substr(3) == kEnglish) {
    return LanguagePair(std::string(text.substr(0, 2)));
  }
  if (text.size() == 2) return LanguagePair(std::string(text));
  throw ConfigError("cannot parse language pair '" + std::string(text) + "'");
}

DirectionLabel direction_of(std::string_view origin_language,
                            const LanguagePair& pair) {
  if (origin_language == kEnglish) return DirectionLabel::kOriginal;
  if (origin_language == pair.foreign()) return DirectionLabel::kTranslated;
  throw DataError("origin '" + std::string(origin_language) +
                  "' does not belong to pair " + pair.code());
}

std::string_view label_code(DirectionLabel label) {
  return label == DirectionLabel::kOriginal ? "O" : "T";
}

DirectionLabel parse_label_code(std::string_view code) {
  if (code == "O") return DirectionLabel::kOriginal;
  if (code == "T") return DirectionLabel::kTranslated;
  throw DataError("unknown direction label '" + std::string(code) + "'");
}

}  // namespace transdir
