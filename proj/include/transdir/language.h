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

#ifndef TRANSDIR_LANGUAGE_H_
#define TRANSDIR_LANGUAGE_H_

#include <string>
#include <string_view>

namespace transdir {

inline constexpr std::string_view kEnglish = "en";

// A bilingual corpus: some foreign language paired with English.
class LanguagePair {
 public:
  // Throws ConfigError unless `foreign` is a two-letter lowercase code other
  // than "en".
  explicit LanguagePair(std::string foreign);

  // Accepts "fr-en", "fr_en" or a bare "fr".
  static LanguagePair parse(std::string_view text);

  const std::string& foreign() const { return foreign_; }
  std::string_view english() const { return kEnglish; }

  // "fr-en"; used in file names and reports.
  std::string code() const { return foreign_ + "-en"; }
  // "fr_en"; the name of the link-file directory.
  std::string link_dir() const { return foreign_ + "_en"; }

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
  friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;

 private:
  std::string foreign_;
};

bool is_language_code(std::string_view code);

// Direction of the English side of an aligned pair. Encoded as 0/1 for the
// learners.
enum class DirectionLabel : int {
  kOriginal = 0,
  kTranslated = 1,
};

// ORIGINAL iff the text was authored in English; TRANSLATED iff it was
// authored in the pair's foreign language. Any other origin is a DataError.
DirectionLabel direction_of(std::string_view origin_language,
                            const LanguagePair& pair);

// "O" / "T".
std::string_view label_code(DirectionLabel label);
DirectionLabel parse_label_code(std::string_view code);

inline int label_value(DirectionLabel label) { return static_cast<int>(label); }

}  // namespace transdir

#endif  // TRANSDIR_LANGUAGE_H_
