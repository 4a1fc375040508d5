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

#include "transdir/features.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/random.h"

namespace transdir {
namespace internal {
extern const char kDefaultFunctionWords[];
}  // namespace internal

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> parse_word_lines(std::string_view content) {
  std::vector<std::string> words;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t last = line.find_last_not_of(" \t");
    words.push_back(line.substr(first, last - first + 1));
  }
  return words;
}

TagNgram split_ngram(const std::string& joined) {
  TagNgram out;
  std::size_t pos = 0;
  while (pos <= joined.size()) {
    std::size_t end = joined.find(' ', pos);
    if (end == std::string::npos) end = joined.size();
    out.push_back(joined.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

Eigen::SparseVector<double> make_sparse(
    Eigen::Index dimension, std::vector<std::pair<Eigen::Index, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Eigen::SparseVector<double> v(dimension);
  v.reserve(static_cast<Eigen::Index>(entries.size()));
  for (const auto& [index, value] : entries) {
    if (value != 0.0) v.insertBack(index) = value;
  }
  return v;
}

void check_token_count(std::int64_t n) {
  if (n < 1) throw DataError("cannot vectorize a chunk with no tokens");
}

void add_sentence_ngrams(const TaggedSentence& s, int n, NgramCounts& counts) {
  const std::size_t order = static_cast<std::size_t>(n);
  if (s.tags.size() < order) return;
  std::string key;
  for (std::size_t i = 0; i + order <= s.tags.size(); ++i) {
    key.clear();
    for (std::size_t j = 0; j < order; ++j) {
      if (j > 0) key.push_back(' ');
      key.append(s.tags[i + j]);
    }
    ++counts[key];
  }
}

NgramVocab select_top_k(const NgramCounts& totals, int n, int k) {
  std::vector<std::pair<std::int64_t, TagNgram>> ranked;
  ranked.reserve(totals.size());
  for (const auto& [joined, count] : totals) {
    ranked.emplace_back(count, split_ngram(joined));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  const std::size_t keep = std::min(ranked.size(), static_cast<std::size_t>(k));
  std::vector<TagNgram> entries;
  entries.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) entries.push_back(std::move(ranked[i].second));
  return NgramVocab(n, static_cast<std::size_t>(k), std::move(entries));
}

void check_vocab_args(int n, int k) {
  if (k <= 0) throw ConfigError("top-k must be positive");
  if (n != 2 && n != 3) throw ConfigError("n-gram order must be 2 or 3");
}

}  // namespace

std::string_view feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kFw:
      return "FW";
    case FeatureKind::kPos2:
      return "POS2";
    case FeatureKind::kPos3:
      return "POS3";
    case FeatureKind::kFwPos2:
      return "FW_POS2";
    case FeatureKind::kFwPos3:
      return "FW_POS3";
  }
  return "?";
}

FeatureKind parse_feature_kind(std::string_view name) {
  for (FeatureKind kind : {FeatureKind::kFw, FeatureKind::kPos2, FeatureKind::kPos3,
                           FeatureKind::kFwPos2, FeatureKind::kFwPos3}) {
    if (feature_kind_name(kind) == name) return kind;
  }
  throw ConfigError("unknown feature kind '" + std::string(name) + "'");
}

bool uses_function_words(FeatureKind kind) {
  return kind == FeatureKind::kFw || kind == FeatureKind::kFwPos2 ||
         kind == FeatureKind::kFwPos3;
}

int ngram_order(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kPos2:
    case FeatureKind::kFwPos2:
      return 2;
    case FeatureKind::kPos3:
    case FeatureKind::kFwPos3:
      return 3;
    case FeatureKind::kFw:
      return 0;
  }
  return 0;
}

FunctionWordList::FunctionWordList(std::vector<std::string> words,
                                   std::string source)
    : source_(std::move(source)) {
  words_.reserve(words.size());
  for (std::string& w : words) {
    std::string lowered = ascii_lower(w);
    if (lowered.empty()) throw ConfigError("empty function word in " + source_);
    if (!index_.emplace(lowered, words_.size()).second) {
      throw ConfigError("duplicate function word '" + lowered + "' in " + source_);
    }
    words_.push_back(std::move(lowered));
  }
}

FunctionWordList FunctionWordList::load(const std::filesystem::path& path) {
  return FunctionWordList(parse_word_lines(internal::read_file(path)),
                          path.filename().string());
}

std::shared_ptr<const FunctionWordList> FunctionWordList::default_english() {
  static const std::shared_ptr<const FunctionWordList> list =
      std::make_shared<const FunctionWordList>(
          parse_word_lines(internal::kDefaultFunctionWords),
          "function_words_en.txt");
  return list;
}

std::optional<std::size_t> FunctionWordList::index_of(
    std::string_view lowercase_word) const {
  auto it = index_.find(std::string(lowercase_word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string FunctionWordList::hash() const {
  std::string joined;
  for (const std::string& w : words_) {
    joined.append(w);
    joined.push_back('\n');
  }
  std::ostringstream out;
  out << std::hex << fnv1a(joined);
  return out.str();
}

std::string join_ngram(const TagNgram& ngram) {
  std::string out;
  for (std::size_t i = 0; i < ngram.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.append(ngram[i]);
  }
  return out;
}

NgramVocab::NgramVocab(int n, std::size_t k, std::vector<TagNgram> entries)
    : n_(n), k_(k), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].size() != static_cast<std::size_t>(n_)) {
      throw ConfigError("vocabulary entry of the wrong order");
    }
    index_.emplace(join_ngram(entries_[i]), i);
  }
}

std::optional<std::size_t> NgramVocab::index_of(const std::string& joined) const {
  auto it = index_.find(joined);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NgramCounts count_ngrams(const Chunk& chunk, int n) {
  NgramCounts counts;
  for (const TaggedSentence& s : chunk.sentences) add_sentence_ngrams(s, n, counts);
  return counts;
}

NgramVocab top_k_ngrams(std::span<const Chunk> training_chunks, int n, int k) {
  check_vocab_args(n, k);
  if (training_chunks.empty()) throw ConfigError("no training chunks for vocabulary");
  NgramCounts totals;
  for (const Chunk& chunk : training_chunks) {
    for (const TaggedSentence& s : chunk.sentences) add_sentence_ngrams(s, n, totals);
  }
  return select_top_k(totals, n, k);
}

NgramVocab top_k_ngrams(std::span<const NgramCounts> per_chunk,
                        std::span<const std::size_t> subset, int n, int k) {
  check_vocab_args(n, k);
  if (subset.empty()) throw ConfigError("no training chunks for vocabulary");
  NgramCounts totals;
  for (std::size_t i : subset) {
    for (const auto& [joined, count] : per_chunk[i]) totals[joined] += count;
  }
  return select_top_k(totals, n, k);
}

std::size_t FeatureSpec::dimension() const {
  std::size_t d = 0;
  if (uses_function_words(kind) && fw_list) d += fw_list->size();
  if (ngram_order(kind) != 0 && vocab) d += vocab->size();
  return d;
}

void FeatureSpec::validate() const {
  if (uses_function_words(kind) && !fw_list) {
    throw ConfigError(std::string(feature_kind_name(kind)) +
                      " features need a function-word list");
  }
  if (ngram_order(kind) != 0) {
    if (!vocab) {
      throw ConfigError(std::string(feature_kind_name(kind)) +
                        " features need an n-gram vocabulary");
    }
    if (vocab->n() != ngram_order(kind)) {
      throw ConfigError("vocabulary order does not match feature kind");
    }
  }
  if (!(basis > 0.0)) throw ConfigError("normalization basis must be positive");
}

FeatureVector fw_vector(const Chunk& chunk, const FunctionWordList& fw_list,
                        double basis) {
  check_token_count(chunk.token_count);
  std::vector<std::int64_t> counts(fw_list.size(), 0);
  for (const TaggedSentence& s : chunk.sentences) {
    for (const std::string& token : s.tokens) {
      if (auto index = fw_list.index_of(ascii_lower(token))) ++counts[*index];
    }
  }
  const double n = static_cast<double>(chunk.token_count);
  std::vector<std::pair<Eigen::Index, double>> entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) {
      entries.emplace_back(static_cast<Eigen::Index>(i),
                           static_cast<double>(counts[i]) * basis / n);
    }
  }
  return {make_sparse(static_cast<Eigen::Index>(fw_list.size()), std::move(entries)),
          chunk.label};
}

FeatureVector pos_ngram_vector(const NgramCounts& counts, std::int64_t token_count,
                               DirectionLabel label, const NgramVocab& vocab,
                               const FeatureSpec& spec) {
  check_token_count(token_count);
  const double scale =
      spec.normalize_pos ? spec.basis / static_cast<double>(token_count) : 1.0;
  std::vector<std::pair<Eigen::Index, double>> entries;
  for (const auto& [joined, count] : counts) {
    if (auto index = vocab.index_of(joined)) {
      entries.emplace_back(static_cast<Eigen::Index>(*index),
                           static_cast<double>(count) * scale);
    }
  }
  return {make_sparse(static_cast<Eigen::Index>(vocab.size()), std::move(entries)),
          label};
}

FeatureVector pos_ngram_vector(const Chunk& chunk, const NgramVocab& vocab,
                               const FeatureSpec& spec) {
  return pos_ngram_vector(count_ngrams(chunk, vocab.n()), chunk.token_count,
                          chunk.label, vocab, spec);
}

FeatureVector combine(const FeatureVector& fw, const FeatureVector& pos) {
  if (fw.label != pos.label) {
    throw std::logic_error("combine: feature vectors carry different labels");
  }
  const Eigen::Index offset = fw.dimension();
  Eigen::SparseVector<double> out(offset + pos.dimension());
  out.reserve(fw.values.nonZeros() + pos.values.nonZeros());
  for (Eigen::SparseVector<double>::InnerIterator it(fw.values); it; ++it) {
    out.insertBack(it.index()) = it.value();
  }
  for (Eigen::SparseVector<double>::InnerIterator it(pos.values); it; ++it) {
    out.insertBack(offset + it.index()) = it.value();
  }
  return {std::move(out), fw.label};
}

FeatureVector vectorize(const Chunk& chunk, const FeatureSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FeatureKind::kFw:
      return fw_vector(chunk, *spec.fw_list, spec.basis);
    case FeatureKind::kPos2:
    case FeatureKind::kPos3:
      return pos_ngram_vector(chunk, *spec.vocab, spec);
    case FeatureKind::kFwPos2:
    case FeatureKind::kFwPos3:
      return combine(fw_vector(chunk, *spec.fw_list, spec.basis),
                     pos_ngram_vector(chunk, *spec.vocab, spec));
  }
  throw std::logic_error("unhandled feature kind");
}

ChunkFeaturizer::ChunkFeaturizer(std::span<const Chunk> chunks, FeatureRecipe recipe)
    : chunks_(chunks), recipe_(std::move(recipe)) {
  if (uses_function_words(recipe_.kind) && !recipe_.fw_list) {
    recipe_.fw_list = FunctionWordList::default_english();
  }
  if (const int n = ngram_order(recipe_.kind)) {
    check_vocab_args(n, recipe_.top_k);
    counts_.reserve(chunks_.size());
    for (const Chunk& chunk : chunks_) counts_.push_back(count_ngrams(chunk, n));
  }
}

FeatureSpec ChunkFeaturizer::fit(std::span<const std::size_t> training) const {
  FeatureSpec spec;
  spec.kind = recipe_.kind;
  spec.basis = recipe_.basis;
  spec.normalize_pos = recipe_.normalize_pos;
  if (uses_function_words(recipe_.kind)) spec.fw_list = recipe_.fw_list;
  if (const int n = ngram_order(recipe_.kind)) {
    spec.vocab = top_k_ngrams(counts_, training, n, recipe_.top_k);
  }
  spec.validate();
  return spec;
}

FeatureSpec ChunkFeaturizer::fit_all() const {
  std::vector<std::size_t> all(chunks_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return fit(all);
}

FeatureVector ChunkFeaturizer::transform(std::size_t chunk,
                                         const FeatureSpec& spec) const {
  const Chunk& c = chunks_[chunk];
  switch (spec.kind) {
    case FeatureKind::kFw:
      return fw_vector(c, *spec.fw_list, spec.basis);
    case FeatureKind::kPos2:
    case FeatureKind::kPos3:
      return pos_ngram_vector(counts_[chunk], c.token_count, c.label, *spec.vocab,
                              spec);
    case FeatureKind::kFwPos2:
    case FeatureKind::kFwPos3:
      return combine(fw_vector(c, *spec.fw_list, spec.basis),
                     pos_ngram_vector(counts_[chunk], c.token_count, c.label,
                                      *spec.vocab, spec));
  }
  throw std::logic_error("unhandled feature kind");
}

std::string format_dataset(std::span<const FeatureVector> vectors) {
  std::string out;
  for (const FeatureVector& v : vectors) {
    nlohmann::ordered_json j;
    j["label"] = label_value(v.label);
    j["dim"] = v.dimension();
    nlohmann::ordered_json x = nlohmann::ordered_json::array();
    for (Eigen::SparseVector<double>::InnerIterator it(v.values); it; ++it) {
      x.push_back({it.index(), it.value()});
    }
    j["x"] = std::move(x);
    out.append(j.dump());
    out.push_back('\n');
  }
  return out;
}

std::vector<FeatureVector> parse_dataset(std::string_view content,
                                         std::string_view source_name) {
  std::vector<FeatureVector> out;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto fail = [&](const std::string& what) {
      return DataError(std::string(source_name) + ":" +
                       std::to_string(line_number) + ": " + what);
    };
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      const int label = j.at("label").get<int>();
      if (label != 0 && label != 1) throw fail("label must be 0 or 1");
      const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
      if (dim < 0) throw fail("negative dimension");
      std::vector<std::pair<Eigen::Index, double>> entries;
      Eigen::Index last = -1;
      for (const nlohmann::json& e : j.at("x")) {
        const Eigen::Index index = e.at(0).get<Eigen::Index>();
        const double value = e.at(1).get<double>();
        if (index <= last || index >= dim) throw fail("feature indices out of order or range");
        if (!std::isfinite(value)) throw fail("non-finite feature value");
        last = index;
        entries.emplace_back(index, value);
      }
      out.push_back({make_sparse(dim, std::move(entries)),
                     static_cast<DirectionLabel>(label)});
    } catch (const nlohmann::json::exception& e) {
      throw fail(std::string("malformed record: ") + e.what());
    }
  }
  return out;
}

void write_dataset(const std::filesystem::path& path,
                   std::span<const FeatureVector> vectors) {
  internal::write_file(path, format_dataset(vectors));
}

std::vector<FeatureVector> load_dataset(const std::filesystem::path& path) {
  return parse_dataset(internal::read_file(path), path.string());
}

std::string spec_manifest(const FeatureSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = feature_kind_name(spec.kind);
  j["basis"] = spec.basis;
  j["normalize_pos"] = spec.normalize_pos;
  j["dimension"] = spec.dimension();
  if (uses_function_words(spec.kind) && spec.fw_list) {
    j["fw_list"] = {{"source", spec.fw_list->source()},
                    {"size", spec.fw_list->size()},
                    {"hash", spec.fw_list->hash()}};
  } else {
    j["fw_list"] = nullptr;
  }
  if (ngram_order(spec.kind) != 0 && spec.vocab) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const TagNgram& ngram : spec.vocab->entries()) entries.push_back(join_ngram(ngram));
    j["vocab"] = {{"n", spec.vocab->n()}, {"k", spec.vocab->k()}, {"entries", entries}};
  } else {
    j["vocab"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string spec_hash(const FeatureSpec& spec) {
  std::ostringstream out;
  out << std::hex << fnv1a(spec_manifest(spec));
  return out.str();
}

}  // namespace transdir
