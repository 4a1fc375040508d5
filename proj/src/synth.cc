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

#include "transdir/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "file_util.h"
#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/features.h"
#include "transdir/random.h"

namespace transdir {
namespace fs = std::filesystem;

namespace {

constexpr double kRowTolerance = 1e-9;

// Inverse-CDF sampling from the rows of a row-stochastic matrix.
class RowSampler {
 public:
  explicit RowSampler(const Eigen::MatrixXd& probabilities)
      : cumulative_(probabilities.rows(), probabilities.cols()) {
    for (Eigen::Index r = 0; r < probabilities.rows(); ++r) {
      double acc = 0.0;
      for (Eigen::Index c = 0; c < probabilities.cols(); ++c) {
        acc += probabilities(r, c);
        cumulative_(r, c) = acc;
      }
    }
  }

  Eigen::Index sample(Eigen::Index row, Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) *
                     cumulative_(row, cumulative_.cols() - 1);
    for (Eigen::Index c = 0; c < cumulative_.cols(); ++c) {
      if (u < cumulative_(row, c)) return c;
    }
    return cumulative_.cols() - 1;
  }

 private:
  Eigen::MatrixXd cumulative_;
};

Eigen::MatrixXd normalize_rows(Eigen::MatrixXd m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) /= m.row(r).sum();
  return m;
}

Eigen::MatrixXd dirichlet_rows(Eigen::Index rows, Eigen::Index cols, double alpha,
                               double floor, Rng& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = gamma(rng) + floor;
  }
  return normalize_rows(std::move(m));
}

void check_stochastic(const Eigen::MatrixXd& m, std::string_view name) {
  if ((m.array() < 0.0).any() || !m.allFinite()) {
    throw ConfigError(std::string(name) + " has negative or non-finite entries");
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (std::abs(m.row(r).sum() - 1.0) > kRowTolerance) {
      throw ConfigError(std::string(name) + " row " + std::to_string(r) +
                        " does not sum to 1");
    }
  }
}

std::string pseudo_stem(int index) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::string s;
  s.push_back(kConsonants[static_cast<std::size_t>(index) % kConsonants.size()]);
  s.push_back(kVowels[static_cast<std::size_t>(index / 14) % kVowels.size()]);
  s.push_back(kConsonants[static_cast<std::size_t>(index * 5 + 3) % kConsonants.size()]);
  s.push_back(kVowels[static_cast<std::size_t>(index / 3 + 1) % kVowels.size()]);
  return s;
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out.append("&amp;"); break;
      case '<': out.append("&lt;"); break;
      case '>': out.append("&gt;"); break;
      case '"': out.append("&quot;"); break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct DocumentPlan {
  std::string foreign;
  DirectionLabel label;
  int index;

  std::string relative_path() const {
    char name[32];
    std::snprintf(name, sizeof(name), "%c%04d.xml",
                  label == DirectionLabel::kOriginal ? 'o' : 't', index);
    return "synth/" + foreign + "/" + name;
  }
  std::string origin() const {
    return label == DirectionLabel::kOriginal ? std::string(kEnglish) : foreign;
  }
};

std::vector<DocumentPlan> plan_documents(const SynthConfig& config) {
  std::vector<DocumentPlan> plans;
  for (const std::string& foreign : config.foreign_languages) {
    for (DirectionLabel label : {DirectionLabel::kOriginal, DirectionLabel::kTranslated}) {
      for (int d = 0; d < config.docs_per_class; ++d) plans.push_back({foreign, label, d});
    }
  }
  return plans;
}

class SentenceSampler {
 public:
  SentenceSampler(const SynthConfig& config, const Eigen::MatrixXd& transitions)
      : config_(config),
        start_(config.start.transpose()),
        transitions_(transitions),
        emissions_(config.emissions) {}

  // Tags and tokens of one sentence, "." included.
  TaggedSentence sample(Rng& rng) const {
    const int mean = std::max(1, config_.mean_sentence_length);
    std::uniform_int_distribution<int> length(std::max(1, mean / 2),
                                              std::max(1, mean + mean / 2));
    const int n = length(rng);
    TaggedSentence s;
    Eigen::Index tag = start_.sample(0, rng);
    for (int i = 0; i < n; ++i) {
      if (i > 0) tag = transitions_.sample(tag, rng);
      const Eigen::Index word = emissions_.sample(tag, rng);
      s.tags.push_back(config_.tags[static_cast<std::size_t>(tag)]);
      s.tokens.push_back(config_.vocabulary[static_cast<std::size_t>(word)]);
    }
    s.tokens.front() = capitalize(s.tokens.front());
    s.tokens.emplace_back(".");
    s.tags.emplace_back(kSentenceFinalTag);
    return s;
  }

 private:
  const SynthConfig& config_;
  RowSampler start_;
  RowSampler transitions_;
  RowSampler emissions_;
};

Eigen::MatrixXd document_transitions(const SynthConfig& config,
                                     const DocumentPlan& plan, Rng& rng) {
  Eigen::MatrixXd m = class_transitions(config, plan.label);
  if (config.nuisance <= 0.0) return m;
  const Eigen::Index t = m.rows();
  Rng pair_rng = make_rng(config.seed, "nuisance/" + plan.foreign);
  const Eigen::MatrixXd pair_drift = dirichlet_rows(t, t, 1.0, 0.0, pair_rng);
  const Eigen::MatrixXd doc_drift = dirichlet_rows(t, t, 1.0, 0.0, rng);
  return (1.0 - config.nuisance) * m +
         config.nuisance * (0.5 * pair_drift + 0.5 * doc_drift);
}

std::vector<TaggedSentence> generate_document(const SynthConfig& config,
                                              const DocumentPlan& plan) {
  Rng rng = make_rng(config.seed, "doc/" + plan.relative_path());
  const Eigen::MatrixXd transitions = document_transitions(config, plan, rng);
  const SentenceSampler sampler(config, transitions);
  const std::string pair = LanguagePair(plan.foreign).code();
  std::vector<TaggedSentence> out;
  out.reserve(static_cast<std::size_t>(config.sentences_per_doc));
  for (int i = 0; i < config.sentences_per_doc; ++i) {
    TaggedSentence s = sampler.sample(rng);
    s.origin = plan.origin();
    s.pair = pair;
    out.push_back(std::move(s));
  }
  return out;
}

std::string english_text(const TaggedSentence& s) {
  std::string text;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i > 0 && s.tokens[i] != ".") text.push_back(' ');
    text.append(s.tokens[i]);
  }
  return text;
}

// Deterministic stand-in for the foreign side: every word reversed.
std::string foreign_text(const TaggedSentence& s) {
  std::string text;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text.append(s.tokens[i].rbegin(), s.tokens[i].rend());
  }
  return text;
}

std::string document_xml(std::string_view lang, std::string_view source,
                         const std::vector<std::string>& texts) {
  std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml += "<doc lang=\"" + std::string(lang) + "\" source_language=\"" +
         std::string(source) + "\">\n";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    xml += "  <s id=\"" + std::to_string(i + 1) + "\" lang=\"" + std::string(lang) +
           "\">" + xml_escape(texts[i]) + "</s>\n";
  }
  xml += "</doc>\n";
  return xml;
}

std::string link_xml(const std::string& foreign_doc, const std::string& english_doc,
                     std::size_t count) {
  std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml += "<linkGrp src=\"" + xml_escape(foreign_doc) + "\" trg=\"" +
         xml_escape(english_doc) + "\">\n";
  for (std::size_t i = 1; i <= count; ++i) {
    xml += "  <link src=\"" + std::to_string(i) + "\" trg=\"" + std::to_string(i) +
           "\"/>\n";
  }
  xml += "</linkGrp>\n";
  return xml;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  const Eigen::Index cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != cols) {
      throw ConfigError("ragged matrix in synth config");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

}  // namespace

void SynthConfig::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  if (!(nuisance >= 0.0 && nuisance <= 1.0)) {
    throw ConfigError("nuisance must lie in [0, 1]");
  }
  if (docs_per_class < 1 || sentences_per_doc < 1 || mean_sentence_length < 1) {
    throw ConfigError("document and sentence counts must be positive");
  }
  if (oracle_chunk_tokens < 1 || oracle_chunks < 2) {
    throw ConfigError("oracle needs a positive chunk size and at least two chunks");
  }
  const auto t = static_cast<Eigen::Index>(tags.size());
  if (t == 0) throw ConfigError("synth config has no tags");
  if (start.size() != t || base_transitions.rows() != t ||
      base_transitions.cols() != t || perturbation.rows() != t ||
      perturbation.cols() != t) {
    throw ConfigError("transition shapes do not match the tag inventory");
  }
  if (emissions.rows() != t ||
      emissions.cols() != static_cast<Eigen::Index>(vocabulary.size())) {
    throw ConfigError("emission table shape does not match tags x vocabulary");
  }
  check_stochastic(start.transpose(), "start distribution");
  check_stochastic(base_transitions, "T0");
  check_stochastic(perturbation, "T1");
  check_stochastic(emissions, "emissions");
  if (foreign_languages.empty()) throw ConfigError("synth config has no language pairs");
  std::set<std::string> seen;
  for (const std::string& code : foreign_languages) {
    LanguagePair pair(code);
    if (!seen.insert(code).second) throw ConfigError("duplicate pair " + code);
  }
}

SynthConfig default_synth_config(std::uint64_t seed, double perturbation_scale) {
  SynthConfig config;
  config.seed = seed;
  config.tags = {"CC", "DT", "IN",  "JJ", "MD",  "NN", "NNS",
                 "PRP", "RB", "TO", "VB", "VBD", "VBZ"};
  const auto t = static_cast<Eigen::Index>(config.tags.size());
  auto tag_index = [&](std::string_view tag) {
    return static_cast<Eigen::Index>(
        std::find(config.tags.begin(), config.tags.end(), tag) - config.tags.begin());
  };

  // Closed classes emit function words with fixed weights.
  const std::map<std::string, std::vector<std::pair<std::string, double>>> closed = {
      {"CC", {{"and", 6}, {"or", 2}, {"but", 2}}},
      {"DT", {{"the", 10}, {"a", 5}, {"this", 2}, {"that", 1}, {"these", 1}, {"an", 1}}},
      {"IN", {{"of", 6}, {"in", 4}, {"to", 2}, {"for", 2}, {"on", 2}, {"with", 2},
              {"by", 1}, {"that", 1}, {"from", 1}, {"at", 1}}},
      {"MD", {{"will", 3}, {"would", 2}, {"should", 2}, {"may", 1}, {"can", 2},
              {"must", 1}, {"might", 1}, {"shall", 1}}},
      {"PRP", {{"it", 4}, {"we", 3}, {"they", 2}, {"he", 1}, {"she", 1}, {"you", 1}}},
      {"TO", {{"to", 1}}},
  };
  const std::map<std::string, std::string> open_suffix = {
      {"JJ", "al"},   {"NN", "tion"}, {"NNS", "tions"}, {"RB", "ly"},
      {"VB", "ize"},  {"VBD", "ized"}, {"VBZ", "izes"},
  };
  constexpr int kOpenClassWords = 40;

  std::map<std::string, Eigen::Index> word_index;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows(
      static_cast<std::size_t>(t));
  auto add_word = [&](const std::string& tag, const std::string& word, double weight) {
    auto [it, inserted] =
        word_index.try_emplace(word, static_cast<Eigen::Index>(config.vocabulary.size()));
    if (inserted) config.vocabulary.push_back(word);
    rows[static_cast<std::size_t>(tag_index(tag))].emplace_back(it->second, weight);
  };
  for (const auto& [tag, words] : closed) {
    for (const auto& [word, weight] : words) add_word(tag, word, weight);
  }
  for (const auto& [tag, suffix] : open_suffix) {
    std::set<std::string> used;
    for (int i = 0; i < kOpenClassWords; ++i) {
      std::string word = pseudo_stem(i) + suffix;
      while (!used.insert(word).second) word.insert(0, "x");
      add_word(tag, word, 1.0 / (1.0 + i));
    }
  }
  // A handful of function-word adverbs shared with the open class.
  for (const char* word : {"also", "not", "very", "only", "now"}) add_word("RB", word, 0.5);

  config.emissions = Eigen::MatrixXd::Zero(t, static_cast<Eigen::Index>(config.vocabulary.size()));
  for (Eigen::Index r = 0; r < t; ++r) {
    for (const auto& [col, weight] : rows[static_cast<std::size_t>(r)]) {
      config.emissions(r, col) += weight;
    }
  }
  config.emissions = normalize_rows(std::move(config.emissions));

  config.start = Eigen::VectorXd::Constant(t, 0.01);
  config.start[tag_index("DT")] = 0.30;
  config.start[tag_index("PRP")] = 0.20;
  config.start[tag_index("NN")] = 0.10;
  config.start[tag_index("NNS")] = 0.10;
  config.start[tag_index("IN")] = 0.10;
  config.start[tag_index("JJ")] = 0.05;
  config.start[tag_index("RB")] = 0.05;
  config.start /= config.start.sum();

  Rng rng = make_rng(seed, "synth/transitions");
  config.base_transitions = dirichlet_rows(t, t, 0.7, 1e-3, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd tilted = config.base_transitions;
  for (Eigen::Index r = 0; r < t; ++r) {
    for (Eigen::Index c = 0; c < t; ++c) {
      tilted(r, c) *= std::exp(perturbation_scale * normal(rng));
    }
  }
  config.perturbation = normalize_rows(std::move(tilted));
  return config;
}

Eigen::MatrixXd class_transitions(const SynthConfig& config, DirectionLabel label) {
  if (label == DirectionLabel::kOriginal) return config.base_transitions;
  return (1.0 - config.delta) * config.base_transitions +
         config.delta * config.perturbation;
}

std::string GroundTruth::origin_of(std::string_view pair,
                                   std::string_view relative_path) const {
  for (const GroundTruthDocument& doc : documents) {
    if (doc.pair == pair && doc.relative_path == relative_path) {
      return doc.original_language;
    }
  }
  return "";
}

std::vector<TaggedSentence> generate_sentences(const SynthConfig& config) {
  config.validate();
  std::vector<TaggedSentence> out;
  for (const DocumentPlan& plan : plan_documents(config)) {
    std::vector<TaggedSentence> doc = generate_document(config, plan);
    std::move(doc.begin(), doc.end(), std::back_inserter(out));
  }
  return out;
}

GroundTruth generate_corpus(const SynthConfig& config, const fs::path& out_root) {
  config.validate();
  internal::ensure_directory(out_root);
  GroundTruth truth;
  std::string truth_tsv = "pair\trelative_path\toriginal_language\tsentences\n";
  for (const DocumentPlan& plan : plan_documents(config)) {
    const std::vector<TaggedSentence> sentences = generate_document(config, plan);
    std::vector<std::string> english, foreign;
    for (const TaggedSentence& s : sentences) {
      english.push_back(english_text(s));
      foreign.push_back(foreign_text(s));
    }
    const LanguagePair pair(plan.foreign);
    const std::string rel = plan.relative_path();
    const std::string origin = plan.origin();
    internal::write_file(out_root / plan.foreign / rel,
                         document_xml(plan.foreign, origin, foreign));
    internal::write_file(out_root / std::string(kEnglish) / rel,
                         document_xml(kEnglish, origin, english));
    fs::path link_rel(rel);
    link_rel.replace_extension(".lnk");
    internal::write_file(out_root / pair.link_dir() / link_rel,
                         link_xml(plan.foreign + "/" + rel, "en/" + rel,
                                  sentences.size()));
    truth.documents.push_back(
        {pair.code(), rel, origin, static_cast<int>(sentences.size())});
    truth_tsv += pair.code() + "\t" + rel + "\t" + origin + "\t" +
                 std::to_string(sentences.size()) + "\n";
  }
  internal::write_file(out_root / "ground_truth.tsv", truth_tsv);
  return truth;
}

std::vector<TaggedExample> generate_tagger_training(const SynthConfig& config,
                                                    int sentences,
                                                    std::uint64_t seed) {
  config.validate();
  const SentenceSampler original(config,
                                 class_transitions(config, DirectionLabel::kOriginal));
  const SentenceSampler translated(
      config, class_transitions(config, DirectionLabel::kTranslated));
  Rng rng = make_rng(seed, "synth/tagger-training");
  std::vector<TaggedExample> out;
  out.reserve(static_cast<std::size_t>(std::max(sentences, 0)));
  for (int i = 0; i < sentences; ++i) {
    TaggedSentence s = (i % 2 == 0 ? original : translated).sample(rng);
    out.push_back({std::move(s.tokens), std::move(s.tags)});
  }
  return out;
}

double oracle_accuracy_bound(const SynthConfig& config) {
  config.validate();
  const Eigen::MatrixXd t0 = class_transitions(config, DirectionLabel::kOriginal);
  const Eigen::MatrixXd t1 = class_transitions(config, DirectionLabel::kTranslated);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Per-transition log-likelihood ratio, translated over original.
  Eigen::MatrixXd log_ratio(t0.rows(), t0.cols());
  for (Eigen::Index r = 0; r < t0.rows(); ++r) {
    for (Eigen::Index c = 0; c < t0.cols(); ++c) {
      const double p0 = t0(r, c), p1 = t1(r, c);
      if (p0 == 0.0 && p1 == 0.0) {
        log_ratio(r, c) = 0.0;
      } else if (p0 == 0.0) {
        log_ratio(r, c) = kInf;
      } else if (p1 == 0.0) {
        log_ratio(r, c) = -kInf;
      } else {
        log_ratio(r, c) = std::log(p1) - std::log(p0);
      }
    }
  }

  const RowSampler start(config.start.transpose());
  const RowSampler chains[2] = {RowSampler(t0), RowSampler(t1)};
  const int mean = std::max(1, config.mean_sentence_length);
  std::uniform_int_distribution<int> length(std::max(1, mean / 2),
                                            std::max(1, mean + mean / 2));
  Rng rng = make_rng(config.seed, "synth/oracle");

  double credit = 0.0;
  for (int chunk = 0; chunk < config.oracle_chunks; ++chunk) {
    const int truth = chunk % 2;
    double llr = 0.0;
    std::int64_t tokens = 0;
    while (tokens < config.oracle_chunk_tokens) {
      const int n = length(rng);
      Eigen::Index tag = start.sample(0, rng);
      for (int i = 1; i < n; ++i) {
        const Eigen::Index next = chains[truth].sample(tag, rng);
        llr += log_ratio(tag, next);
        tag = next;
      }
      tokens += n + 1;
    }
    if (std::isnan(llr) || llr == 0.0) {
      credit += 0.5;
    } else if ((llr > 0.0) == (truth == 1)) {
      credit += 1.0;
    }
  }
  return std::clamp(credit / config.oracle_chunks, 0.5, 1.0);
}

std::string synth_config_to_json(const SynthConfig& config) {
  nlohmann::ordered_json j;
  j["delta"] = config.delta;
  j["docs_per_class"] = config.docs_per_class;
  j["sentences_per_doc"] = config.sentences_per_doc;
  j["mean_sentence_length"] = config.mean_sentence_length;
  j["foreign_languages"] = config.foreign_languages;
  j["nuisance"] = config.nuisance;
  j["oracle_chunk_tokens"] = config.oracle_chunk_tokens;
  j["oracle_chunks"] = config.oracle_chunks;
  j["seed"] = config.seed;
  j["tags"] = config.tags;
  j["start"] = std::vector<double>(config.start.data(),
                                   config.start.data() + config.start.size());
  j["base_transitions"] = matrix_to_json(config.base_transitions);
  j["perturbation"] = matrix_to_json(config.perturbation);
  j["vocabulary"] = config.vocabulary;
  j["emissions"] = matrix_to_json(config.emissions);
  return j.dump(2) + "\n";
}

SynthConfig synth_config_from_json(std::string_view text) {
  SynthConfig config;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    // Matrices are optional; missing ones come from the default generator.
    const std::uint64_t seed = j.value("seed", config.seed);
    if (!j.contains("tags")) {
      config = default_synth_config(seed, j.value("perturbation_scale", 0.3));
    } else {
      config.tags = j.at("tags").get<std::vector<std::string>>();
      const auto start = j.at("start").get<std::vector<double>>();
      config.start = Eigen::Map<const Eigen::VectorXd>(
          start.data(), static_cast<Eigen::Index>(start.size()));
      config.base_transitions = matrix_from_json(j.at("base_transitions"));
      config.perturbation = matrix_from_json(j.at("perturbation"));
      config.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
      config.emissions = matrix_from_json(j.at("emissions"));
    }
    config.seed = seed;
    config.delta = j.value("delta", config.delta);
    config.docs_per_class = j.value("docs_per_class", config.docs_per_class);
    config.sentences_per_doc = j.value("sentences_per_doc", config.sentences_per_doc);
    config.mean_sentence_length =
        j.value("mean_sentence_length", config.mean_sentence_length);
    config.foreign_languages =
        j.value("foreign_languages", config.foreign_languages);
    config.nuisance = j.value("nuisance", config.nuisance);
    config.oracle_chunk_tokens = j.value("oracle_chunk_tokens", config.oracle_chunk_tokens);
    config.oracle_chunks = j.value("oracle_chunks", config.oracle_chunks);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed synth config: ") + e.what());
  }
  config.validate();
  return config;
}

}  // namespace transdir
