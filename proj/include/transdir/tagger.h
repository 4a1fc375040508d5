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

// Greedy averaged-perceptron part-of-speech tagger.

#ifndef TRANSDIR_TAGGER_H_
#define TRANSDIR_TAGGER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "transdir/corpus.h"
#include "transdir/language.h"
#include "transdir/text.h"

namespace transdir {

struct TaggedExample {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

struct TaggerMetadata {
  std::string training_corpus;
  int epochs = 0;
  std::uint64_t seed = 0;
  std::size_t training_sentences = 0;
  std::optional<double> dev_accuracy;
};

class TaggerModel {
 public:
  TaggerModel() = default;

  // Sorted tag inventory.
  const std::vector<std::string>& tags() const { return tags_; }
  const TaggerMetadata& metadata() const { return metadata_; }
  std::size_t feature_count() const { return weights_.size(); }

  // Versioned JSON container. Keys are sorted, so equal models serialize to
  // identical bytes.
  std::string serialize() const;
  static TaggerModel deserialize(std::string_view text);

  void save(const std::filesystem::path& path) const;
  static TaggerModel load(const std::filesystem::path& path);

 private:
  friend class PerceptronTrainer;
  friend std::vector<std::string> tag(std::span<const std::string> tokens,
                                      const TaggerModel& model);

  std::vector<std::string> tags_;
  // feature -> one weight per tag in `tags_` order.
  std::unordered_map<std::string, std::vector<double>> weights_;
  TaggerMetadata metadata_;
};

// Trains for `epochs` passes, shuffling sentence order each epoch with a
// stream derived from `seed`. When `dev` is non-empty its accuracy is
// stored in the metadata. ConfigError on an empty corpus or non-positive
// epochs; DataError on a token/tag length mismatch.
TaggerModel train_tagger(std::span<const TaggedExample> corpus, int epochs,
                         std::uint64_t seed,
                         std::span<const TaggedExample> dev = {},
                         std::string corpus_id = "");

// One tag per token, decoded greedily left to right. Unknown words fall back
// on suffix and shape features.
std::vector<std::string> tag(std::span<const std::string> tokens,
                             const TaggerModel& model);

// Fraction of tokens tagged correctly.
double tagging_accuracy(const TaggerModel& model,
                        std::span<const TaggedExample> examples);

// Two columns, token TAB tag; a blank line ends a sentence.
std::vector<TaggedExample> read_training_tsv(const std::filesystem::path& path);
std::string format_training_tsv(std::span<const TaggedExample> examples);

// Tokenizes and tags the English side of derived sentences. Sentences with
// no tokens are skipped.
std::vector<TaggedSentence> tag_aligned(std::span<const AlignedSentence> sentences,
                                        const LanguagePair& pair,
                                        const TaggerModel& model);

}  // namespace transdir

#endif  // TRANSDIR_TAGGER_H_
