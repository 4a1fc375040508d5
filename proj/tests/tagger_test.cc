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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "transdir/errors.h"
#include "transdir/synth.h"

namespace transdir {
namespace {

using Strings = std::vector<std::string>;

// Ten sentences over disjoint per-tag vocabularies.
std::vector<TaggedExample> ToyCorpus() {
  const Strings dets = {"the", "a"}, nouns = {"cat", "dog", "bird", "fish", "cow"},
                verbs = {"runs", "sleeps", "eats", "sings", "jumps"};
  std::vector<TaggedExample> corpus;
  for (int i = 0; i < 10; ++i) {
    corpus.push_back({{dets[i % 2], nouns[i % 5], verbs[(i + 2) % 5], "."},
                      {"DT", "NN", "VBZ", "."}});
  }
  return corpus;
}

TEST(TaggerTest, MemorizesToyCorpus) {
  const auto corpus = ToyCorpus();
  const TaggerModel model = train_tagger(corpus, 5, 7);
  EXPECT_DOUBLE_EQ(tagging_accuracy(model, corpus), 1.0);
  for (const TaggedExample& ex : corpus) EXPECT_EQ(tag(ex.tokens, model), ex.tags);
  EXPECT_EQ(model.tags(), (Strings{".", "DT", "NN", "VBZ"}));
}

TEST(TaggerTest, DeterministicSerialization) {
  const auto corpus = ToyCorpus();
  EXPECT_EQ(train_tagger(corpus, 5, 7).serialize(), train_tagger(corpus, 5, 7).serialize());
}

TEST(TaggerTest, SingleTagInventory) {
  const std::vector<TaggedExample> corpus = {{{"x", "y"}, {"NN", "NN"}}, {{"z"}, {"NN"}}};
  const TaggerModel model = train_tagger(corpus, 3, 1);
  const Strings tokens = {"never", "seen", "words"};
  EXPECT_EQ(tag(tokens, model), (Strings{"NN", "NN", "NN"}));
}

TEST(TaggerTest, TotalAndArityPreserving) {
  const TaggerModel model = train_tagger(ToyCorpus(), 5, 7);
  const std::set<std::string> inventory(model.tags().begin(), model.tags().end());
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Strings tokens;
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(rng() % 100));
    const Strings tags = tag(tokens, model);
    ASSERT_EQ(tags.size(), tokens.size());
    for (const std::string& t : tags) EXPECT_TRUE(inventory.contains(t)) << t;
  }
}

TEST(TaggerTest, GeneralizesOnSyntheticText) {
  const SynthConfig config = default_synth_config(5);
  const auto train = generate_tagger_training(config, 1500, 1);
  const auto test = generate_tagger_training(config, 300, 2);
  const TaggerModel model = train_tagger(train, 5, 1, test, "synth");
  EXPECT_GE(tagging_accuracy(model, test), 0.95);
  ASSERT_TRUE(model.metadata().dev_accuracy.has_value());
  EXPECT_EQ(model.metadata().training_corpus, "synth");
  EXPECT_EQ(model.metadata().training_sentences, 1500u);
}

TEST(TaggerTest, SerializeRoundTrip) {
  const TaggerModel model = train_tagger(ToyCorpus(), 5, 7, {}, "toy");
  const std::string text = model.serialize();
  const TaggerModel back = TaggerModel::deserialize(text);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_EQ(back.tags(), model.tags());
  EXPECT_EQ(back.metadata().epochs, 5);
  EXPECT_EQ(back.metadata().training_corpus, "toy");

  testing::TempDir dir;
  model.save(dir / "m.json");
  EXPECT_EQ(TaggerModel::load(dir / "m.json").serialize(), text);
}

TEST(TaggerTest, BadInputs) {
  EXPECT_THROW(train_tagger({}, 5, 1), ConfigError);
  EXPECT_THROW(train_tagger(ToyCorpus(), 0, 1), ConfigError);
  const std::vector<TaggedExample> ragged = {{{"a", "b"}, {"DT"}}};
  EXPECT_THROW(train_tagger(ragged, 1, 1), DataError);
  EXPECT_THROW(TaggerModel::deserialize("{\"format\":\"other\"}"), DataError);
  EXPECT_THROW(TaggerModel::deserialize("not json"), DataError);
}

TEST(TrainingTsvTest, RoundTrip) {
  const auto corpus = ToyCorpus();
  testing::TempDir dir;
  testing::WriteFile(dir / "train.tsv", format_training_tsv(corpus));
  const auto back = read_training_tsv(dir / "train.tsv");
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].tokens, corpus[i].tokens);
    EXPECT_EQ(back[i].tags, corpus[i].tags);
  }
}

TEST(TrainingTsvTest, MissingTagColumnIsDataError) {
  testing::TempDir dir;
  testing::WriteFile(dir / "bad.tsv", "the\tDT\ncat\n");
  EXPECT_THROW(read_training_tsv(dir / "bad.tsv"), DataError);
}

TEST(TagAlignedTest, TokenizesAndKeepsProvenance) {
  const TaggerModel model = train_tagger(ToyCorpus(), 5, 7);
  const std::vector<AlignedSentence> aligned = {{"the cat runs.", "le chat", "fr", ""},
                                                {"   ", "", "en", ""},
                                                {"a dog sleeps.", "un chien", "en", ""}};
  const auto tagged = tag_aligned(aligned, LanguagePair("fr"), model);
  ASSERT_EQ(tagged.size(), 2u);
  EXPECT_EQ(tagged[0].tokens, (Strings{"the", "cat", "runs", "."}));
  EXPECT_EQ(tagged[0].tags, (Strings{"DT", "NN", "VBZ", "."}));
  EXPECT_EQ(tagged[0].origin, "fr");
  EXPECT_EQ(tagged[0].pair, "fr-en");
  EXPECT_EQ(tagged[1].origin, "en");
}

}  // namespace
}  // namespace transdir
