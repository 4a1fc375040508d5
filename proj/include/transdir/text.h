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

// English-side text handling: tokenization and the tagged-sentence records
// that flow from tagging into chunking.

#ifndef TRANSDIR_TEXT_H_
#define TRANSDIR_TEXT_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transdir/language.h"

namespace transdir {

// Splits on ASCII whitespace, then separates leading and trailing
// punctuation and English clitics ("don't" -> "do", "n't"; "we're" -> "we",
// "'re"). Internal punctuation is kept, so numbers such as "1,000.5",
// hyphenated words and URLs stay whole. A run of one repeated punctuation
// mark ("...", "--") is a single token.
//
// Tokenizing the space-join of the output yields the output again.
std::vector<std::string> tokenize(std::string_view text);

// One English sentence with its tags and provenance.
struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  // ISO code of the language the sentence was authored in.
  std::string origin;
  // "fr-en"; empty when the provenance is unknown (e.g. read back from a
  // pooled chunk file).
  std::string pair;

  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

// Direction of the sentence with respect to its pair. DataError when the
// origin belongs to neither side.
DirectionLabel sentence_label(const TaggedSentence& sentence);

// Checks |tokens| == |tags| >= 1, that tokens and tags are non-empty and
// contain no whitespace, and that the origin matches the pair. Returns an
// empty string when valid, otherwise a description of the violation.
std::string validate_sentence(const TaggedSentence& sentence);

// JSON-lines intermediate format, one sentence per line:
//   {"tokens":[...],"tags":[...],"origin":"fr","pair":"fr-en"}
// Errors carry the 1-based line number.
std::vector<TaggedSentence> load_pretagged(const std::filesystem::path& path);
std::vector<TaggedSentence> parse_pretagged(std::string_view content,
                                            std::string_view source_name = "");
void write_pretagged(const std::filesystem::path& path,
                     std::span<const TaggedSentence> sentences);
std::string format_pretagged(std::span<const TaggedSentence> sentences);

}  // namespace transdir

#endif  // TRANSDIR_TEXT_H_
