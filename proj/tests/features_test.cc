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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "transdir/errors.h"

namespace transdir {
namespace {

using Strings = std::vector<std::string>;

Chunk MakeChunk(const std::vector<std::pair<Strings, Strings>>& sentences,
                DirectionLabel label = DirectionLabel::kTranslated) {
  Chunk c;
  c.label = label;
  c.provenance = "fr-en";
  for (const auto& [tokens, tags] : sentences) {
    c.sentences.push_back(
        {tokens, tags, label == DirectionLabel::kOriginal ? "en" : "fr", "fr-en"});
    c.token_count += static_cast<std::int64_t>(tokens.size());
  }
  return c;
}

Chunk TaggedOnly(const std::vector<Strings>& tag_sequences) {
  std::vector<std::pair<Strings, Strings>> s;
  for (const Strings& tags : tag_sequences) s.emplace_back(Strings(tags.size(), "x"), tags);
  return MakeChunk(s);
}

std::shared_ptr<const FunctionWordList> SmallList() {
  return std::make_shared<const FunctionWordList>(Strings{"the", "of", "and"}, "test");
}

TEST(FeatureKindTest, NamesAndOrders) {
  for (FeatureKind kind : {FeatureKind::kFw, FeatureKind::kPos2, FeatureKind::kPos3,
                           FeatureKind::kFwPos2, FeatureKind::kFwPos3}) {
    EXPECT_EQ(parse_feature_kind(feature_kind_name(kind)), kind);
  }
  EXPECT_EQ(ngram_order(FeatureKind::kFw), 0);
  EXPECT_EQ(ngram_order(FeatureKind::kFwPos3), 3);
  EXPECT_TRUE(uses_function_words(FeatureKind::kFwPos2));
  EXPECT_FALSE(uses_function_words(FeatureKind::kPos2));
  EXPECT_THROW(parse_feature_kind("POS4"), ConfigError);
}

TEST(FunctionWordListTest, DefaultList) {
  const auto list = FunctionWordList::default_english();
  EXPECT_GT(list->size(), 300u);
  EXPECT_TRUE(list->index_of("the").has_value());
  EXPECT_TRUE(list->index_of("n't").has_value());
  EXPECT_FALSE(list->index_of("council").has_value());
  EXPECT_EQ(list->hash(), FunctionWordList::default_english()->hash());
}

TEST(FunctionWordListTest, LoadAndDuplicates) {
  testing::TempDir dir;
  testing::WriteFile(dir / "fw.txt", "the\nof\n\n# comment\nand\n");
  const FunctionWordList list = FunctionWordList::load(dir / "fw.txt");
  EXPECT_EQ(list.words(), (Strings{"the", "of", "and"}));
  EXPECT_THROW(FunctionWordList(Strings({"a", "a"}), "dup"), ConfigError);
  EXPECT_THROW(FunctionWordList::load(dir / "missing.txt"), IoError);
}

TEST(FwVectorTest, NormalizesByChunkLength) {
  const Chunk c = MakeChunk({{{"The", "cat", "the", "mat", "of", "the", "x", "y", "z", "w"},
                              Strings(10, "NN")}});
  const FeatureVector v = fw_vector(c, *SmallList(), 2000.0);
  EXPECT_EQ(v.dimension(), 3);
  EXPECT_DOUBLE_EQ(v.values.coeff(0), 600.0);
  EXPECT_DOUBLE_EQ(v.values.coeff(1), 200.0);
  EXPECT_DOUBLE_EQ(v.values.coeff(2), 0.0);
  EXPECT_EQ(v.label, DirectionLabel::kTranslated);
}

TEST(FwVectorTest, NoFunctionWordsGivesZeroVector) {
  const Chunk c = MakeChunk({{{"cat", "mat"}, {"NN", "NN"}}});
  EXPECT_EQ(fw_vector(c, *SmallList(), 2000.0).values.nonZeros(), 0);
}

TEST(FwVectorTest, EmptyChunkIsDataError) {
  EXPECT_THROW(fw_vector(Chunk{}, *SmallList(), 2000.0), DataError);
}

TEST(CountNgramsTest, PerSentenceWithoutPadding) {
  const Chunk c = TaggedOnly({{"DT", "NN", "VB", "DT", "NN"}, {"NN"}, {"DT", "NN"}});
  const NgramCounts bigrams = count_ngrams(c, 2);
  EXPECT_EQ(bigrams.at("DT NN"), 3);
  EXPECT_EQ(bigrams.at("NN VB"), 1);
  EXPECT_EQ(bigrams.size(), 3u);
  const NgramCounts trigrams = count_ngrams(c, 3);
  EXPECT_EQ(trigrams.size(), 3u);
  EXPECT_FALSE(trigrams.contains("NN DT NN"));
}

TEST(TopKTest, MostFrequentFirst) {
  std::vector<Strings> tags(100, Strings{"DT", "NN", "VB"});
  const Chunk c = TaggedOnly(tags);
  const NgramVocab vocab = top_k_ngrams(std::span(&c, 1), 2, 2);
  EXPECT_EQ(vocab.entries(), (std::vector<TagNgram>{{"DT", "NN"}, {"NN", "VB"}}));
}

TEST(TopKTest, KLargerThanDistinct) {
  const Chunk c = TaggedOnly({{"B", "A", "C"}, {"A", "B"}});
  const NgramVocab vocab = top_k_ngrams(std::span(&c, 1), 2, 10);
  EXPECT_EQ(vocab.size(), 3u);
  EXPECT_EQ(vocab.k(), 10u);
  EXPECT_EQ(vocab.entries(), (std::vector<TagNgram>{{"A", "B"}, {"A", "C"}, {"B", "A"}}));
}

TEST(TopKTest, TiesAreLexicographic) {
  const Chunk c = TaggedOnly({{"NNS", "DT"}, {"NN", "VB"}, {"IN", "NN"}});
  const NgramVocab vocab = top_k_ngrams(std::span(&c, 1), 2, 2);
  EXPECT_EQ(vocab.entries(), (std::vector<TagNgram>{{"IN", "NN"}, {"NN", "VB"}}));
}

TEST(TopKTest, BadArguments) {
  const Chunk c = TaggedOnly({{"A", "B"}});
  EXPECT_THROW(top_k_ngrams(std::span(&c, 1), 2, 0), ConfigError);
  EXPECT_THROW(top_k_ngrams(std::span(&c, 1), 4, 5), ConfigError);
  EXPECT_THROW(top_k_ngrams(std::span<const Chunk>(), 2, 5), ConfigError);
}

TEST(TopKTest, MatchesBruteForceOracle) {
  std::mt19937 rng(23);
  const Strings alphabet = {"A", "B", "C", "DT", "NN"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Chunk> chunks;
    for (int c = 0; c < 3; ++c) {
      std::vector<Strings> sentences;
      for (int s = 0; s < 4; ++s) {
        Strings tags;
        for (int i = 0, len = static_cast<int>(rng() % 7); i < len; ++i) {
          tags.push_back(alphabet[rng() % alphabet.size()]);
        }
        if (!tags.empty()) sentences.push_back(tags);
      }
      if (sentences.empty()) sentences.push_back({"A", "B", "C"});
      chunks.push_back(TaggedOnly(sentences));
    }
    const int n = 2 + static_cast<int>(trial % 2);
    const int k = 1 + static_cast<int>(rng() % 12);

    std::map<TagNgram, int> counts;
    for (const Chunk& c : chunks) {
      for (const TaggedSentence& s : c.sentences) {
        for (std::size_t i = 0; i + n <= s.tags.size(); ++i) {
          ++counts[TagNgram(s.tags.begin() + i, s.tags.begin() + i + n)];
        }
      }
    }
    std::vector<std::pair<int, TagNgram>> ranked;
    for (const auto& [g, count] : counts) ranked.emplace_back(-count, g);
    std::sort(ranked.begin(), ranked.end());
    std::vector<TagNgram> expected;
    for (std::size_t i = 0; i < ranked.size() && i < static_cast<std::size_t>(k); ++i) {
      expected.push_back(ranked[i].second);
    }
    EXPECT_EQ(top_k_ngrams(chunks, n, k).entries(), expected) << "trial " << trial;
  }
}

TEST(PosVectorTest, CountsVocabularyEntries) {
  const Chunk c = TaggedOnly({{"DT", "NN", "VB", "DT", "NN"}});
  const NgramVocab vocab(2, 2, {{"DT", "NN"}, {"JJ", "NN"}});
  FeatureSpec spec;
  spec.kind = FeatureKind::kPos2;
  spec.vocab = vocab;
  const FeatureVector v = pos_ngram_vector(c, vocab, spec);
  EXPECT_EQ(v.dimension(), 2);
  EXPECT_DOUBLE_EQ(v.values.coeff(0), 2.0);
  EXPECT_EQ(v.values.nonZeros(), 1);
}

TEST(PosVectorTest, ShortSentenceContributesNothing) {
  const Chunk c = TaggedOnly({{"DT", "NN"}});
  const NgramVocab vocab(3, 1, {{"DT", "NN", "VB"}});
  FeatureSpec spec;
  spec.kind = FeatureKind::kPos3;
  spec.vocab = vocab;
  EXPECT_EQ(pos_ngram_vector(c, vocab, spec).values.nonZeros(), 0);
}

FeatureVector Sparse(Eigen::Index d, const std::map<Eigen::Index, double>& entries) {
  FeatureVector v;
  v.values.resize(d);
  for (const auto& [i, x] : entries) v.values.insert(i) = x;
  return v;
}

TEST(CombineTest, OffsetsPosIndices) {
  const FeatureVector c = combine(Sparse(3, {{0, 1.0}}), Sparse(2, {{1, 4.0}}));
  EXPECT_EQ(c.dimension(), 5);
  EXPECT_EQ(c.values.nonZeros(), 2);
  EXPECT_DOUBLE_EQ(c.values.coeff(0), 1.0);
  EXPECT_DOUBLE_EQ(c.values.coeff(4), 4.0);
}

TEST(CombineTest, EmptyPosPart) {
  const FeatureVector c = combine(Sparse(3, {{2, 7.0}}), Sparse(4, {}));
  EXPECT_EQ(c.dimension(), 7);
  EXPECT_EQ(c.values.nonZeros(), 1);
}

TEST(CombineTest, EntryCountsAddUp) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<Eigen::Index, double> a, b;
    for (int i = 0; i < 6; ++i) a[rng() % 10] = 1.0 + rng() % 5;
    for (int i = 0; i < 6; ++i) b[rng() % 8] = 1.0 + rng() % 5;
    const FeatureVector c = combine(Sparse(10, a), Sparse(8, b));
    EXPECT_EQ(c.values.nonZeros(), static_cast<Eigen::Index>(a.size() + b.size()));
    for (const auto& [i, x] : b) EXPECT_DOUBLE_EQ(c.values.coeff(10 + i), x);
  }
}

TEST(CombineTest, LabelMismatchIsLogicError) {
  FeatureVector a = Sparse(1, {}), b = Sparse(1, {});
  b.label = DirectionLabel::kTranslated;
  EXPECT_THROW(combine(a, b), std::logic_error);
}

TEST(VectorizeTest, CombinedDimension) {
  std::vector<Chunk> chunks;
  for (int i = 0; i < 4; ++i) {
    chunks.push_back(MakeChunk({{{"the", "cat", "of", "dogs"}, {"DT", "NN", "IN", "NNS"}},
                                {{"and", "so"}, {"CC", "RB"}}}));
  }
  FeatureRecipe recipe;
  recipe.kind = FeatureKind::kFwPos2;
  recipe.fw_list = SmallList();
  recipe.top_k = 2;
  const ChunkFeaturizer featurizer(chunks, recipe);
  const FeatureSpec spec = featurizer.fit_all();
  EXPECT_EQ(spec.dimension(), 3u + 2u);
  const FeatureVector v = featurizer.transform(0, spec);
  EXPECT_EQ(v.dimension(), 5);
  const FeatureVector direct = vectorize(chunks[0], spec);
  EXPECT_EQ(Eigen::VectorXd(direct.values), Eigen::VectorXd(v.values));
}

TEST(ChunkFeaturizerTest, VocabularyComesFromTrainingSubset) {
  const std::vector<Chunk> chunks = {TaggedOnly({{"A", "B"}}), TaggedOnly({{"C", "D"}})};
  FeatureRecipe recipe;
  recipe.kind = FeatureKind::kPos2;
  recipe.top_k = 5;
  const ChunkFeaturizer featurizer(chunks, recipe);
  const std::size_t first[] = {0};
  const FeatureSpec spec = featurizer.fit(first);
  ASSERT_TRUE(spec.vocab.has_value());
  EXPECT_EQ(spec.vocab->entries(), (std::vector<TagNgram>{{"A", "B"}}));
  EXPECT_EQ(featurizer.transform(1, spec).values.nonZeros(), 0);
}

TEST(FeatureSpecTest, MissingComponents) {
  FeatureSpec spec;
  spec.kind = FeatureKind::kFwPos3;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.fw_list = SmallList();
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.vocab = NgramVocab(2, 1, {{"A", "B"}});
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.vocab = NgramVocab(3, 1, {{"A", "B", "C"}});
  EXPECT_NO_THROW(spec.validate());
}

TEST(SpecManifestTest, HashTracksContent) {
  FeatureSpec a;
  a.kind = FeatureKind::kPos2;
  a.vocab = NgramVocab(2, 1, {{"A", "B"}});
  FeatureSpec b = a;
  EXPECT_EQ(spec_hash(a), spec_hash(b));
  b.vocab = NgramVocab(2, 1, {{"B", "A"}});
  EXPECT_NE(spec_hash(a), spec_hash(b));
  EXPECT_NE(spec_manifest(a).find("\"POS2\""), std::string::npos);
}

TEST(DatasetTest, RoundTrip) {
  std::vector<FeatureVector> vectors = {Sparse(4, {{0, 1.5}, {3, 0.1}}), Sparse(4, {})};
  vectors[1].label = DirectionLabel::kTranslated;
  const auto back = parse_dataset(format_dataset(vectors));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].label, vectors[i].label);
    EXPECT_EQ(Eigen::VectorXd(back[i].values), Eigen::VectorXd(vectors[i].values));
  }
  EXPECT_THROW(parse_dataset("{\"label\":\"T\"}\n"), DataError);
}

}  // namespace
}  // namespace transdir
