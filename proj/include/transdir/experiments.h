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

// Experiment suites over tagged corpora and their reports.
//
// Every suite turns tagged sentences into chunks, balances each dataset,
// and runs stratified cross-validation with the top-k vocabulary refit on
// each training fold. Cells are independent and may run in parallel; rows
// always come back in (suite, languages, feature, chunk size, k) order.

#ifndef TRANSDIR_EXPERIMENTS_H_
#define TRANSDIR_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transdir/chunking.h"
#include "transdir/features.h"
#include "transdir/learner.h"
#include "transdir/text.h"

namespace transdir {

enum class Suite { kTable2, kFig2ChunkSweep, kFig3TopkSweep, kCustom };

// "table2", "fig2", "fig3", "custom".
std::string_view suite_name(Suite suite);
Suite parse_suite(std::string_view name);

inline constexpr std::string_view kAllLanguages = "all";

struct ExperimentSpec {
  Suite suite = Suite::kTable2;
  // Directories holding "{pair}.tagged.jsonl" files, searched in order.
  std::vector<std::filesystem::path> corpus_roots;
  std::vector<std::string> pairs = {"fr-en", "es-en", "ru-en", "ar-en"};
  std::vector<FeatureKind> features;
  std::vector<std::int64_t> chunk_sizes;
  std::vector<int> top_ks;
  int folds = 10;
  Hyperparams hyperparams;
  std::uint64_t seed = 0;
  std::shared_ptr<const FunctionWordList> fw_list;
  // Choose the top-k vocabulary once on the whole dataset instead of per
  // training fold. Faster, but test folds leak into the vocabulary.
  bool global_vocab = false;
  // zh-en is dropped from `pairs` unless this is set.
  bool include_chinese = false;
  int jobs = 1;

  // ConfigError on empty grids, folds < 2, bad sizes or unknown pairs.
  void validate() const;
  // `pairs` with zh-en removed unless include_chinese.
  std::vector<std::string> effective_pairs() const;
};

// Grids of the published suites: Table 2 uses FW, POS3 and POS2 at 2000
// tokens; the chunk-size sweep uses POS2 at 2000..600 tokens; the top-k
// sweep uses FW_POS3 and FW_POS2 with k in {100, ..., 1000}.
ExperimentSpec default_experiment_spec(Suite suite);

struct ResultRow {
  std::string suite;
  // A pair code, "all" or "pooled".
  std::string languages;
  FeatureKind feature = FeatureKind::kPos2;
  std::int64_t chunk_size = 0;
  // Unset for FW-only rows.
  std::optional<int> top_k;
  ModelKind model = ModelKind::kLogistic;
  int folds = 0;
  double mean_accuracy = 0.0;
  double std = 0.0;
  // Balanced sample count.
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  // Skipped pairs and cells, in the order they were found.
  std::vector<std::string> notes;
};

using TaggedCorpora = std::map<std::string, std::vector<TaggedSentence>>;

// Loads "{pair}.tagged.jsonl" for every pair, taking the first root that has
// it. Pairs found nowhere are left out; the suites report them as skipped.
TaggedCorpora load_tagged_corpora(const std::vector<std::filesystem::path>& roots,
                                  const std::vector<std::string>& pairs);

// One balanced cross-validation run over `chunks`, which were built at
// `chunk_size` tokens. Balancing uses `balance_seed`; folds
// and SGD use spec.hyperparams with `cv_seed`. Returns nullopt, with a note,
// when the balanced dataset has fewer than 2 * folds chunks.
std::optional<ResultRow> evaluate_cell(std::vector<Chunk> chunks, FeatureKind feature,
                                       std::optional<int> top_k,
                                       const ExperimentSpec& spec,
                                       std::string_view languages,
                                       std::int64_t chunk_size,
                                       std::uint64_t balance_seed, std::uint64_t cv_seed,
                                       std::vector<std::string>& notes);

// Per-pair homogeneous rows, the "all" union of homogeneous chunks, and the
// pooled row, each crossed with spec.features.
ExperimentResult run_table2(const ExperimentSpec& spec, const TaggedCorpora& corpora);

// Pooled chunks at each size of spec.chunk_sizes, features spec.features.
ExperimentResult run_chunk_size_sweep(const ExperimentSpec& spec,
                                      const TaggedCorpora& corpora);

// Pooled chunks at spec.chunk_sizes[0], every feature kind crossed with
// every k of spec.top_ks.
ExperimentResult run_topk_sweep(const ExperimentSpec& spec,
                                const TaggedCorpora& corpora);

// Pooled chunks; the full sizes x features x k grid (k only for kinds that
// use n-grams).
ExperimentResult run_custom(const ExperimentSpec& spec, const TaggedCorpora& corpora);

ExperimentResult run_experiment(const ExperimentSpec& spec, const TaggedCorpora& corpora);

// results.csv columns, in order.
inline constexpr std::string_view kResultsHeader =
    "suite,languages,feature,chunk_size,top_k,model,folds,mean_accuracy,std,"
    "n_samples,seed";

std::string format_results_csv(const std::vector<ResultRow>& rows);
// DataError on a wrong header or malformed line.
std::vector<ResultRow> parse_results_csv(std::string_view content);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

std::string format_summary(const std::vector<ResultRow>& rows,
                           const std::vector<std::string>& notes);

// Plot data files by name ("fig1_languages.dat", ...), only for the suites
// present in `rows`.
std::map<std::string, std::string> format_plot_data(const std::vector<ResultRow>& rows);

// Writes results.csv, summary.md and the plot data files under `out_dir`.
// Returns the written paths. ConfigError when `rows` is empty, IoError when
// the directory cannot be written.
std::vector<std::filesystem::path> emit_report(const std::vector<ResultRow>& rows,
                                               const std::vector<std::string>& notes,
                                               const std::filesystem::path& out_dir);

}  // namespace transdir

#endif  // TRANSDIR_EXPERIMENTS_H_
