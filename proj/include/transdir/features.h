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

// Chunk vectorization: function-word rates, POS n-gram counts, and their
// concatenations.

#ifndef TRANSDIR_FEATURES_H_
#define TRANSDIR_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "transdir/chunking.h"
#include "transdir/language.h"

namespace transdir {

enum class FeatureKind { kFw, kPos2, kPos3, kFwPos2, kFwPos3 };

// "FW", "POS2", "POS3", "FW_POS2", "FW_POS3".
std::string_view feature_kind_name(FeatureKind kind);
FeatureKind parse_feature_kind(std::string_view name);
bool uses_function_words(FeatureKind kind);
// 2 or 3 for kinds with a POS component, 0 otherwise.
int ngram_order(FeatureKind kind);

class FunctionWordList {
 public:
  // Lowercases the words; ConfigError on duplicates or empty entries.
  FunctionWordList(std::vector<std::string> words, std::string source);

  // One word per line; blank lines and '#' comments are skipped.
  static FunctionWordList load(const std::filesystem::path& path);
  // The list shipped in data/function_words_en.txt.
  static std::shared_ptr<const FunctionWordList> default_english();

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& source() const { return source_; }
  std::optional<std::size_t> index_of(std::string_view lowercase_word) const;
  // Hex FNV-1a over the newline-joined list.
  std::string hash() const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string source_;
};

using TagNgram = std::vector<std::string>;

// Tag n-grams keyed by their space-joined form ("DT NN").
using NgramCounts = std::unordered_map<std::string, std::int64_t>;

// The k most frequent tag n-grams, most frequent first, ties broken by
// lexicographic order of the tag sequence.
class NgramVocab {
 public:
  NgramVocab(int n, std::size_t k, std::vector<TagNgram> entries);

  int n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<TagNgram>& entries() const { return entries_; }
  std::optional<std::size_t> index_of(const std::string& joined) const;

  friend bool operator==(const NgramVocab& a, const NgramVocab& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  int n_;
  std::size_t k_;
  std::vector<TagNgram> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string join_ngram(const TagNgram& ngram);

// Per-sentence n-grams (never crossing sentence boundaries, no padding).
NgramCounts count_ngrams(const Chunk& chunk, int n);

// ConfigError when k <= 0, n is not 2 or 3, or there are no chunks.
NgramVocab top_k_ngrams(std::span<const Chunk> training_chunks, int n, int k);
// Same, from precomputed per-chunk counts restricted to `subset`.
NgramVocab top_k_ngrams(std::span<const NgramCounts> per_chunk,
                        std::span<const std::size_t> subset, int n, int k);

struct FeatureSpec {
  FeatureKind kind = FeatureKind::kFw;
  std::shared_ptr<const FunctionWordList> fw_list;
  std::optional<NgramVocab> vocab;
  double basis = 2000.0;
  bool normalize_pos = false;

  // |fw_list| + |vocab| for the components `kind` uses.
  std::size_t dimension() const;
  // ConfigError when a component required by `kind` is missing.
  void validate() const;
};

struct FeatureVector {
  Eigen::SparseVector<double> values;
  DirectionLabel label = DirectionLabel::kOriginal;

  Eigen::Index dimension() const { return values.size(); }
};

// entry i = count(fw_list[i] in lowercased tokens) * basis / chunk.n.
FeatureVector fw_vector(const Chunk& chunk, const FunctionWordList& fw_list,
                        double basis);

// entry i = occurrences of vocab[i] in the chunk, times basis / chunk.n when
// spec.normalize_pos is set.
FeatureVector pos_ngram_vector(const Chunk& chunk, const NgramVocab& vocab,
                               const FeatureSpec& spec);
FeatureVector pos_ngram_vector(const NgramCounts& counts,
                               std::int64_t token_count, DirectionLabel label,
                               const NgramVocab& vocab, const FeatureSpec& spec);

// Concatenation with the POS indices offset by fw.dimension(). Throws
// std::logic_error when the labels differ.
FeatureVector combine(const FeatureVector& fw, const FeatureVector& pos);

FeatureVector vectorize(const Chunk& chunk, const FeatureSpec& spec);

// What to build per cross-validation fold.
struct FeatureRecipe {
  FeatureKind kind = FeatureKind::kPos2;
  std::shared_ptr<const FunctionWordList> fw_list;
  int top_k = 400;
  double basis = 2000.0;
  bool normalize_pos = false;
};

// Vectorizes a fixed chunk set under specs fitted on subsets of it. N-gram
// counts are computed once per chunk up front.
class ChunkFeaturizer {
 public:
  ChunkFeaturizer(std::span<const Chunk> chunks, FeatureRecipe recipe);

  std::size_t size() const { return chunks_.size(); }
  const FeatureRecipe& recipe() const { return recipe_; }
  DirectionLabel label(std::size_t chunk) const { return chunks_[chunk].label; }

  // Builds the spec, choosing the top-k vocabulary from `training` only.
  FeatureSpec fit(std::span<const std::size_t> training) const;
  FeatureSpec fit_all() const;
  FeatureVector transform(std::size_t chunk, const FeatureSpec& spec) const;

 private:
  std::span<const Chunk> chunks_;
  FeatureRecipe recipe_;
  std::vector<NgramCounts> counts_;
};

// Dataset file, JSON lines: {"label":0|1,"dim":D,"x":[[idx,val],...]}.
std::string format_dataset(std::span<const FeatureVector> vectors);
std::vector<FeatureVector> parse_dataset(std::string_view content,
                                         std::string_view source_name = "");
void write_dataset(const std::filesystem::path& path,
                   std::span<const FeatureVector> vectors);
std::vector<FeatureVector> load_dataset(const std::filesystem::path& path);

// Manifest written beside a dataset: kind, basis, k, fw-list hash, vocab.
std::string spec_manifest(const FeatureSpec& spec);
// Hex FNV-1a of the manifest.
std::string spec_hash(const FeatureSpec& spec);

}  // namespace transdir

#endif  // TRANSDIR_FEATURES_H_
