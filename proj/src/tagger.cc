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

#include "transdir/tagger.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/random.h"

namespace transdir {
namespace {

constexpr std::string_view kFormatName = "transdir-tagger";
constexpr int kFormatVersion = 1;
constexpr std::string_view kStart1 = "-START-";
constexpr std::string_view kStart2 = "-START2-";
constexpr std::string_view kEnd = "-END-";

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// "Xxxx-dd" -> "Xx-d": character classes with repeats collapsed.
std::string word_shape(std::string_view word) {
  std::string shape;
  for (char c : word) {
    char cls;
    if (c >= 'A' && c <= 'Z') {
      cls = 'X';
    } else if (c >= 'a' && c <= 'z') {
      cls = 'x';
    } else if (c >= '0' && c <= '9') {
      cls = 'd';
    } else if (static_cast<unsigned char>(c) >= 0x80) {
      cls = 'u';
    } else {
      cls = c;
    }
    if (shape.empty() || shape.back() != cls) shape.push_back(cls);
  }
  return shape;
}

// First UTF-8 code point.
std::string_view first_char(std::string_view word) {
  if (word.empty()) return word;
  const auto lead = static_cast<unsigned char>(word.front());
  std::size_t n = 1;
  if (lead >= 0xf0) {
    n = 4;
  } else if (lead >= 0xe0) {
    n = 3;
  } else if (lead >= 0xc0) {
    n = 2;
  }
  return word.substr(0, std::min(n, word.size()));
}

// Lowercased token context shared by every position of one sentence.
struct Context {
  std::vector<std::string> lowered;

  explicit Context(std::span<const std::string> tokens) {
    lowered.reserve(tokens.size());
    for (const std::string& t : tokens) lowered.push_back(lowercase(t));
  }
};

void extract_features(const Context& ctx, std::span<const std::string> tokens,
                      std::size_t i, std::string_view prev,
                      std::string_view prev2, std::vector<std::string>& out) {
  out.clear();
  const std::string& w = ctx.lowered[i];
  auto add = [&](std::string_view name, std::string_view value) {
    std::string f(name);
    f.push_back('=');
    f.append(value);
    out.push_back(std::move(f));
  };
  out.emplace_back("bias");
  add("w", w);
  for (std::size_t n = 1; n <= 3; ++n) {
    if (w.size() >= n) add("s" + std::to_string(n), std::string_view(w).substr(w.size() - n));
  }
  add("f", first_char(tokens[i]));
  add("shape", word_shape(tokens[i]));
  add("t-1", prev);
  std::string both(prev2);
  both.push_back('|');
  both.append(prev);
  add("t-2,t-1", both);
  add("w-1", i > 0 ? std::string_view(ctx.lowered[i - 1]) : kStart1);
  add("w+1", i + 1 < tokens.size() ? std::string_view(ctx.lowered[i + 1]) : kEnd);
}

std::size_t argmax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return best;
}

void check_example(const TaggedExample& ex, std::size_t index) {
  if (ex.tokens.size() != ex.tags.size()) {
    throw DataError("training sentence " + std::to_string(index + 1) +
                    ": tokens/tags length mismatch");
  }
}

}  // namespace

class PerceptronTrainer {
 public:
  explicit PerceptronTrainer(std::vector<std::string> tags) {
    model_.tags_ = std::move(tags);
  }

  std::size_t tag_index(const std::string& tag) const {
    auto it = std::lower_bound(model_.tags_.begin(), model_.tags_.end(), tag);
    return static_cast<std::size_t>(it - model_.tags_.begin());
  }

  void train_sentence(const TaggedExample& ex) {
    const Context ctx(ex.tokens);
    std::string prev(kStart1), prev2(kStart2);
    std::vector<double> scores(model_.tags_.size());
    for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
      extract_features(ctx, ex.tokens, i, prev, prev2, features_);
      std::fill(scores.begin(), scores.end(), 0.0);
      for (const std::string& f : features_) {
        auto it = model_.weights_.find(f);
        if (it == model_.weights_.end()) continue;
        for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += it->second[c];
      }
      const std::size_t guess = argmax(scores);
      const std::size_t truth = tag_index(ex.tags[i]);
      ++instances_;
      if (guess != truth) {
        for (const std::string& f : features_) {
          update(f, truth, 1.0);
          update(f, guess, -1.0);
        }
      }
      prev2 = std::move(prev);
      prev = model_.tags_[guess];
    }
  }

  static void set_metadata(TaggerModel& model, TaggerMetadata metadata) {
    model.metadata_ = std::move(metadata);
  }

  TaggerModel finish() {
    const double n = static_cast<double>(std::max<std::int64_t>(instances_, 1));
    for (auto& [feature, weights] : model_.weights_) {
      Accumulator& acc = accumulators_[feature];
      for (std::size_t c = 0; c < weights.size(); ++c) {
        acc.totals[c] +=
            static_cast<double>(instances_ - acc.stamps[c]) * weights[c];
        weights[c] = acc.totals[c] / n;
      }
    }
    std::erase_if(model_.weights_, [](const auto& entry) {
      return std::all_of(entry.second.begin(), entry.second.end(),
                         [](double w) { return w == 0.0; });
    });
    return std::move(model_);
  }

  TaggerModel& model() { return model_; }

 private:
  struct Accumulator {
    std::vector<double> totals;
    std::vector<std::int64_t> stamps;
  };

  void update(const std::string& feature, std::size_t tag, double delta) {
    const std::size_t n_tags = model_.tags_.size();
    auto [wit, inserted] = model_.weights_.try_emplace(feature);
    Accumulator& acc = accumulators_[feature];
    if (inserted) {
      wit->second.assign(n_tags, 0.0);
      acc.totals.assign(n_tags, 0.0);
      acc.stamps.assign(n_tags, 0);
    }
    acc.totals[tag] += static_cast<double>(instances_ - acc.stamps[tag]) *
                       wit->second[tag];
    acc.stamps[tag] = instances_;
    wit->second[tag] += delta;
  }

  TaggerModel model_;
  std::unordered_map<std::string, Accumulator> accumulators_;
  std::vector<std::string> features_;
  std::int64_t instances_ = 0;
};

TaggerModel train_tagger(std::span<const TaggedExample> corpus, int epochs,
                         std::uint64_t seed, std::span<const TaggedExample> dev,
                         std::string corpus_id) {
  if (corpus.empty()) throw ConfigError("cannot train a tagger on an empty corpus");
  if (epochs < 1) throw ConfigError("tagger epochs must be >= 1");
  std::set<std::string> inventory;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    check_example(corpus[i], i);
    inventory.insert(corpus[i].tags.begin(), corpus[i].tags.end());
  }
  if (inventory.empty()) throw ConfigError("training corpus has no tokens");

  PerceptronTrainer trainer({inventory.begin(), inventory.end()});
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) trainer.train_sentence(corpus[i]);
  }
  TaggerModel model = trainer.finish();
  TaggerMetadata metadata;
  metadata.training_corpus = std::move(corpus_id);
  metadata.epochs = epochs;
  metadata.seed = seed;
  metadata.training_sentences = corpus.size();
  if (!dev.empty()) metadata.dev_accuracy = tagging_accuracy(model, dev);
  PerceptronTrainer::set_metadata(model, std::move(metadata));
  return model;
}

std::vector<std::string> tag(std::span<const std::string> tokens,
                             const TaggerModel& model) {
  std::vector<std::string> out;
  if (tokens.empty() || model.tags_.empty()) return out;
  out.reserve(tokens.size());
  const Context ctx(tokens);
  std::vector<std::string> features;
  std::vector<double> scores(model.tags_.size());
  std::string_view prev = kStart1, prev2 = kStart2;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    extract_features(ctx, tokens, i, prev, prev2, features);
    std::fill(scores.begin(), scores.end(), 0.0);
    for (const std::string& f : features) {
      auto it = model.weights_.find(f);
      if (it == model.weights_.end()) continue;
      for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += it->second[c];
    }
    out.push_back(model.tags_[argmax(scores)]);
    prev2 = prev;
    prev = out.back();
  }
  return out;
}

double tagging_accuracy(const TaggerModel& model,
                        std::span<const TaggedExample> examples) {
  std::size_t correct = 0, total = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    check_example(examples[i], i);
    const std::vector<std::string> predicted = tag(examples[i].tokens, model);
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      correct += predicted[j] == examples[i].tags[j];
    }
    total += predicted.size();
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::string TaggerModel::serialize() const {
  nlohmann::json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  j["tags"] = tags_;
  nlohmann::json meta;
  meta["training_corpus"] = metadata_.training_corpus;
  meta["epochs"] = metadata_.epochs;
  meta["seed"] = metadata_.seed;
  meta["training_sentences"] = metadata_.training_sentences;
  if (metadata_.dev_accuracy) meta["dev_accuracy"] = *metadata_.dev_accuracy;
  j["metadata"] = std::move(meta);
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [feature, values] : weights_) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (values[c] != 0.0) row[tags_[c]] = values[c];
    }
    weights[feature] = std::move(row);
  }
  j["weights"] = std::move(weights);
  return j.dump() + "\n";
}

TaggerModel TaggerModel::deserialize(std::string_view text) {
  TaggerModel model;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormatName) {
      throw DataError("not a tagger model");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported tagger model version");
    }
    model.tags_ = j.at("tags").get<std::vector<std::string>>();
    if (model.tags_.empty() ||
        !std::is_sorted(model.tags_.begin(), model.tags_.end())) {
      throw DataError("tagger model has an invalid tag inventory");
    }
    const nlohmann::json& meta = j.at("metadata");
    model.metadata_.training_corpus = meta.at("training_corpus").get<std::string>();
    model.metadata_.epochs = meta.at("epochs").get<int>();
    model.metadata_.seed = meta.at("seed").get<std::uint64_t>();
    model.metadata_.training_sentences =
        meta.at("training_sentences").get<std::size_t>();
    if (meta.contains("dev_accuracy")) {
      model.metadata_.dev_accuracy = meta.at("dev_accuracy").get<double>();
    }
    for (const auto& [feature, row] : j.at("weights").items()) {
      std::vector<double> values(model.tags_.size(), 0.0);
      for (const auto& [tag_name, w] : row.items()) {
        auto it = std::lower_bound(model.tags_.begin(), model.tags_.end(), tag_name);
        if (it == model.tags_.end() || *it != tag_name) {
          throw DataError("weight for unknown tag '" + tag_name + "'");
        }
        values[static_cast<std::size_t>(it - model.tags_.begin())] = w.get<double>();
      }
      model.weights_.emplace(feature, std::move(values));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed tagger model: ") + e.what());
  }
  return model;
}

void TaggerModel::save(const std::filesystem::path& path) const {
  internal::write_file(path, serialize());
}

TaggerModel TaggerModel::load(const std::filesystem::path& path) {
  return deserialize(internal::read_file(path));
}

std::vector<TaggedExample> read_training_tsv(const std::filesystem::path& path) {
  std::vector<TaggedExample> out;
  TaggedExample current;
  internal::for_each_line(path, [&](std::string_view line, int number) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (!current.tokens.empty()) out.push_back(std::move(current));
      current = {};
      return;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw DataError(path.string() + ":" + std::to_string(number) +
                      ": expected 'token<TAB>tag'");
    }
    current.tokens.emplace_back(line.substr(0, tab));
    current.tags.emplace_back(line.substr(tab + 1));
  });
  if (!current.tokens.empty()) out.push_back(std::move(current));
  return out;
}

std::string format_training_tsv(std::span<const TaggedExample> examples) {
  std::string out;
  for (const TaggedExample& ex : examples) {
    for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
      out.append(ex.tokens[i]);
      out.push_back('\t');
      out.append(ex.tags[i]);
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<TaggedSentence> tag_aligned(std::span<const AlignedSentence> sentences,
                                        const LanguagePair& pair,
                                        const TaggerModel& model) {
  std::vector<TaggedSentence> out;
  out.reserve(sentences.size());
  for (const AlignedSentence& s : sentences) {
    TaggedSentence tagged;
    tagged.tokens = tokenize(s.english_text);
    if (tagged.tokens.empty()) continue;
    tagged.tags = tag(tagged.tokens, model);
    tagged.origin = s.original_language;
    tagged.pair = pair.code();
    out.push_back(std::move(tagged));
  }
  return out;
}

}  // namespace transdir
