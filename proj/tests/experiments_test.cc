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

#include "transdir/experiments.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "transdir/errors.h"
#include "transdir/synth.h"

namespace transdir {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;
using testing::TempDir;

// Gold-tagged synthetic corpora for four pairs.
TaggedCorpora GoldCorpora(double delta, std::uint64_t seed) {
  SynthConfig config = default_synth_config(seed);
  config.delta = delta;
  config.foreign_languages = {"fr", "es", "ru", "ar"};
  config.docs_per_class = 20;
  config.sentences_per_doc = 110;
  TaggedCorpora corpora;
  for (TaggedSentence& s : generate_sentences(config)) {
    corpora[s.pair].push_back(std::move(s));
  }
  return corpora;
}

const TaggedCorpora& Separable() {
  static const TaggedCorpora corpora = GoldCorpora(0.4, 1);
  return corpora;
}

ExperimentSpec Spec(Suite suite, std::uint64_t seed = 7) {
  ExperimentSpec spec = default_experiment_spec(suite);
  spec.seed = seed;
  return spec;
}

TEST(ExperimentSpecTest, Defaults) {
  const ExperimentSpec table2 = default_experiment_spec(Suite::kTable2);
  EXPECT_EQ(table2.features.size(), 3u);
  EXPECT_EQ(table2.chunk_sizes, std::vector<std::int64_t>{2000});
  EXPECT_EQ(table2.folds, 10);
  const ExperimentSpec fig2 = default_experiment_spec(Suite::kFig2ChunkSweep);
  EXPECT_EQ(fig2.chunk_sizes,
            (std::vector<std::int64_t>{2000, 1500, 1000, 750, 700, 600}));
  const ExperimentSpec fig3 = default_experiment_spec(Suite::kFig3TopkSweep);
  EXPECT_EQ(fig3.top_ks.size(), 7u);
  EXPECT_EQ(parse_suite("fig3"), Suite::kFig3TopkSweep);
  EXPECT_THROW(parse_suite("fig9"), ConfigError);
}

TEST(ExperimentSpecTest, Validation) {
  ExperimentSpec spec = Spec(Suite::kTable2);
  spec.folds = 1;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec = Spec(Suite::kTable2);
  spec.pairs = {"zh-en"};
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.include_chinese = true;
  EXPECT_NO_THROW(spec.validate());
}

TEST(Table2Test, RowsAndBalance) {
  const ExperimentResult result = run_table2(Spec(Suite::kTable2), Separable());
  ASSERT_EQ(result.rows.size(), 18u);
  std::map<std::string, int> per_language;
  for (const ResultRow& row : result.rows) {
    ++per_language[row.languages];
    EXPECT_EQ(row.n_samples % 2, 0) << row.languages;
    EXPECT_GT(row.n_samples, 0);
    EXPECT_EQ(row.folds, 10);
    EXPECT_EQ(row.chunk_size, 2000);
    EXPECT_EQ(row.top_k.has_value(), row.feature != FeatureKind::kFw);
  }
  for (const char* languages : {"fr-en", "es-en", "ru-en", "ar-en", "all", "pooled"}) {
    EXPECT_EQ(per_language[languages], 3) << languages;
  }
  const std::string csv = format_results_csv(result.rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 19);
  EXPECT_EQ(csv.substr(0, kResultsHeader.size()), kResultsHeader);
  EXPECT_EQ(parse_results_csv(csv), result.rows);
}

TEST(Table2Test, PooledPosIsWellAboveChance) {
  const ExperimentResult result = run_table2(Spec(Suite::kTable2), Separable());
  for (const ResultRow& row : result.rows) {
    if (row.languages == "pooled" && row.feature == FeatureKind::kPos2) {
      EXPECT_GE(row.mean_accuracy, 0.9);
    }
  }
}

TEST(Table2Test, IndistinguishableClassesAreAtChance) {
  const ExperimentResult result = run_table2(Spec(Suite::kTable2), GoldCorpora(0.0, 2));
  for (const ResultRow& row : result.rows) {
    if (row.languages != "pooled" && row.languages != "all") continue;
    EXPECT_GE(row.mean_accuracy, 0.35) << row.languages;
    EXPECT_LE(row.mean_accuracy, 0.65) << row.languages;
  }
}

TEST(Table2Test, MissingPairIsNoted) {
  TaggedCorpora corpora = Separable();
  corpora.erase("ru-en");
  ExperimentSpec spec = Spec(Suite::kTable2);
  spec.features = {FeatureKind::kPos2};
  const ExperimentResult result = run_table2(spec, corpora);
  EXPECT_EQ(result.rows.size(), 5u);
  EXPECT_NE(std::find(result.notes.begin(), result.notes.end(),
                      "skipped ru-en: no tagged corpus found"),
            result.notes.end());
}

TEST(Table2Test, ChineseIsExcludedUnlessRequested) {
  TaggedCorpora corpora = Separable();
  corpora["zh-en"] = corpora.at("fr-en");
  for (TaggedSentence& s : corpora["zh-en"]) {
    s.pair = "zh-en";
    if (s.origin == "fr") s.origin = "zh";
  }
  ExperimentSpec spec = Spec(Suite::kTable2);
  spec.features = {FeatureKind::kPos2};
  spec.pairs.push_back("zh-en");
  for (const ResultRow& row : run_table2(spec, corpora).rows) {
    EXPECT_NE(row.languages, "zh-en");
  }
  spec.include_chinese = true;
  const auto rows = run_table2(spec, corpora).rows;
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(),
                          [](const ResultRow& r) { return r.languages == "zh-en"; }));
}

TEST(Fig2Test, SmallerChunksGiveMoreSamples) {
  const ExperimentResult result =
      run_chunk_size_sweep(Spec(Suite::kFig2ChunkSweep), Separable());
  ASSERT_EQ(result.rows.size(), 6u);
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    EXPECT_LT(result.rows[i].chunk_size, result.rows[i - 1].chunk_size);
    EXPECT_GT(result.rows[i].n_samples, result.rows[i - 1].n_samples);
  }
}

TEST(Fig2Test, SkippedCellsAreNoted) {
  TaggedCorpora tiny;
  for (const auto& [pair, sentences] : Separable()) {
    tiny[pair].assign(sentences.begin(), sentences.begin() + 60);
    tiny[pair].insert(tiny[pair].end(), sentences.end() - 60, sentences.end());
  }
  ExperimentSpec spec = Spec(Suite::kFig2ChunkSweep);
  const ExperimentResult result = run_chunk_size_sweep(spec, tiny);
  EXPECT_LT(result.rows.size(), 6u);
  EXPECT_EQ(result.rows.size() + result.notes.size(), 6u);
}

TEST(Fig3Test, TopKRowsAndBaseline) {
  const ExperimentSpec spec = Spec(Suite::kFig3TopkSweep);
  const ExperimentResult result = run_topk_sweep(spec, Separable());
  ASSERT_EQ(result.rows.size(), 14u);
  ExperimentSpec fw = Spec(Suite::kTable2);
  fw.features = {FeatureKind::kFw};
  double baseline = -1;
  for (const ResultRow& row : run_table2(fw, Separable()).rows) {
    if (row.languages == "pooled") baseline = row.mean_accuracy;
  }
  ASSERT_GE(baseline, 0.0);
  for (const ResultRow& row : result.rows) {
    ASSERT_TRUE(row.top_k.has_value());
    if (*row.top_k == 400) {
      EXPECT_GE(row.mean_accuracy, baseline - 0.02) << feature_kind_name(row.feature);
    }
  }
}

TEST(ReportTest, DeterministicAcrossRuns) {
  TempDir a, b;
  const ExperimentSpec spec = Spec(Suite::kTable2);
  const ExperimentResult first = run_table2(spec, Separable());
  ExperimentSpec parallel = spec;
  parallel.jobs = 3;
  const ExperimentResult second = run_table2(parallel, Separable());
  const auto files_a = emit_report(first.rows, first.notes, a.path());
  const auto files_b = emit_report(second.rows, second.notes, b.path());
  ASSERT_EQ(files_a.size(), files_b.size());
  for (const fs::path& file : files_a) {
    const fs::path name = file.filename();
    EXPECT_EQ(ReadFile(a.path() / name), ReadFile(b.path() / name)) << name;
  }
  EXPECT_TRUE(fs::exists(a / "results.csv"));
  EXPECT_TRUE(fs::exists(a / "summary.md"));
  EXPECT_TRUE(fs::exists(a / "fig1_languages.dat"));
}

TEST(ReportTest, SummarySections) {
  const ExperimentResult result = run_table2(Spec(Suite::kTable2), Separable());
  const std::string summary = format_summary(result.rows, {"a note"});
  EXPECT_NE(summary.find("Accuracy by language set"), std::string::npos);
  EXPECT_NE(summary.find("a note"), std::string::npos);
  EXPECT_NE(summary.find("(sd "), std::string::npos);
}

TEST(ReportTest, Errors) {
  TempDir dir;
  EXPECT_THROW(emit_report({}, {}, dir.path()), ConfigError);
  EXPECT_THROW(parse_results_csv("bogus\n"), DataError);
  EXPECT_THROW(parse_results_csv(std::string(kResultsHeader) + "\ntable2,all\n"),
               DataError);
}

}  // namespace
}  // namespace transdir
