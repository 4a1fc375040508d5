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

#ifndef TRANSDIR_TESTS_PIPELINE_UTIL_H_
#define TRANSDIR_TESTS_PIPELINE_UTIL_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "transdir/corpus.h"
#include "transdir/experiments.h"
#include "transdir/synth.h"
#include "transdir/tagger.h"

namespace transdir::testing {

struct SynthPipeline {
  SynthConfig config;
  GroundTruth truth;
  TaggedCorpora corpora;
  double tagger_accuracy = 0.0;
};

// synth -> derive -> train tagger on generated tagged text -> tag English side.
inline SynthPipeline RunSynthPipeline(const SynthConfig& config,
                                      const std::filesystem::path& root,
                                      int tagger_sentences = 2000) {
  SynthPipeline out;
  out.config = config;
  out.truth = generate_corpus(config, root);
  const std::vector<TaggedExample> train =
      generate_tagger_training(config, tagger_sentences, config.seed);
  const std::vector<TaggedExample> dev =
      generate_tagger_training(config, 200, config.seed + 1000);
  const TaggerModel model = train_tagger(train, 5, config.seed, dev, "synth");
  out.tagger_accuracy = tagging_accuracy(model, dev);
  for (const std::string& foreign : config.foreign_languages) {
    const LanguagePair pair(foreign);
    const Derivation derivation = derive_pair(root, pair);
    out.corpora[pair.code()] = tag_aligned(derivation.sentences, pair, model);
  }
  return out;
}

inline SynthConfig FourPairConfig(double delta, std::uint64_t seed) {
  SynthConfig config = default_synth_config(seed);
  config.delta = delta;
  config.foreign_languages = {"fr", "es", "ru", "ar"};
  config.docs_per_class = 20;
  config.sentences_per_doc = 110;
  return config;
}

}  // namespace transdir::testing

#endif  // TRANSDIR_TESTS_PIPELINE_UTIL_H_
