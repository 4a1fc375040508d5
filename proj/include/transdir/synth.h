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

// Synthetic parallel corpora with a controllable direction signal.
//
// English sentences are tag sequences drawn from a first-order Markov chain
// with per-tag word emissions. ORIGINAL text uses the base transition matrix
// T0; TRANSLATED text uses the mixture (1 - delta) T0 + delta T1. Closed-class
// tags emit function words, so a shift in tag transitions also moves
// function-word rates. Optional nuisance drift mixes a per-pair and a
// per-document random transition matrix into both classes alike.

#ifndef TRANSDIR_SYNTH_H_
#define TRANSDIR_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "transdir/language.h"
#include "transdir/tagger.h"
#include "transdir/text.h"

namespace transdir {

struct SynthConfig {
  double delta = 0.4;
  int docs_per_class = 20;
  int sentences_per_doc = 100;
  // Mean number of chain tokens per sentence; a final "." is appended.
  int mean_sentence_length = 24;

  std::vector<std::string> tags;
  Eigen::VectorXd start;
  // Row-stochastic, tags x tags.
  Eigen::MatrixXd base_transitions;
  Eigen::MatrixXd perturbation;
  std::vector<std::string> vocabulary;
  // Row-stochastic, tags x vocabulary.
  Eigen::MatrixXd emissions;

  // One bilingual corpus "{code}-en" per entry.
  std::vector<std::string> foreign_languages = {"fr"};
  // Weight in [0, 1] of the pair/document drift mixed into every class.
  double nuisance = 0.0;

  // Chunk size and sample count used by oracle_accuracy_bound.
  std::int64_t oracle_chunk_tokens = 2000;
  int oracle_chunks = 2000;

  std::uint64_t seed = 1;

  // ConfigError on out-of-range values, shape mismatches or rows that do not
  // sum to 1 within 1e-9.
  void validate() const;
};

inline constexpr std::string_view kSentenceFinalTag = ".";

// 13 Penn-style tags over a pseudo-word vocabulary plus the function words of
// the default list. T0 is random with full support; T1 multiplies T0 by
// exp(perturbation_scale * z), z standard normal, and renormalizes rows.
SynthConfig default_synth_config(std::uint64_t seed = 1,
                                 double perturbation_scale = 0.3);

// T0 for ORIGINAL, (1 - delta) T0 + delta T1 for TRANSLATED.
Eigen::MatrixXd class_transitions(const SynthConfig& config, DirectionLabel label);

struct GroundTruthDocument {
  std::string pair;
  std::string relative_path;
  std::string original_language;
  int sentences = 0;
};

struct GroundTruth {
  std::vector<GroundTruthDocument> documents;

  // Original language of the document at `relative_path` in `pair`, or "".
  std::string origin_of(std::string_view pair, std::string_view relative_path) const;
};

// The gold-tagged English side of the corpus, in document order (pairs in
// config order, ORIGINAL documents before TRANSLATED ones).
std::vector<TaggedSentence> generate_sentences(const SynthConfig& config);

// Writes root/{fr,en,fr_en,...} with documents whose metadata and links
// reproduce the labels of generate_sentences, plus root/ground_truth.tsv.
// IoError when the tree cannot be written.
GroundTruth generate_corpus(const SynthConfig& config,
                            const std::filesystem::path& out_root);

// Gold-tagged sentences for training a tagger, half from each class.
std::vector<TaggedExample> generate_tagger_training(const SynthConfig& config,
                                                    int sentences,
                                                    std::uint64_t seed);

// Monte-Carlo estimate of the Bayes-optimal accuracy on balanced chunks of
// `oracle_chunk_tokens` tokens, classifying by the exact log-likelihood
// ratio of the two nuisance-free class chains. Clamped to [0.5, 1].
double oracle_accuracy_bound(const SynthConfig& config);

std::string synth_config_to_json(const SynthConfig& config);
SynthConfig synth_config_from_json(std::string_view text);

}  // namespace transdir

#endif  // TRANSDIR_SYNTH_H_
