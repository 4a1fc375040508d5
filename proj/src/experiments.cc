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
#include <atomic>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

#include "transdir/errors.h"
#include "transdir/language.h"
#include "transdir/random.h"

namespace transdir {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kChinesePair = "zh-en";

using CellFn = std::function<std::optional<ResultRow>(std::vector<std::string>& notes)>;

// Runs cells up to `jobs` wide; rows and notes come back in cell order.
ExperimentResult run_cells(const std::vector<CellFn>& cells, int jobs,
                           std::vector<std::string> notes) {
  std::vector<std::optional<ResultRow>> rows(cells.size());
  std::vector<std::vector<std::string>> cell_notes(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = cells[i](cell_notes[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t width =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), cells.size());
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < width; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.notes = std::move(notes);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (rows[i]) result.rows.push_back(std::move(*rows[i]));
    for (std::string& n : cell_notes[i]) result.notes.push_back(std::move(n));
  }
  return result;
}

std::optional<int> top_k_for(FeatureKind kind, int k) {
  if (ngram_order(kind) == 0) return std::nullopt;
  return k;
}

std::vector<TaggedSentence> concatenate(const TaggedCorpora& corpora,
                                        const std::vector<std::string>& pairs) {
  std::vector<TaggedSentence> all;
  for (const std::string& pair : pairs) {
    const auto& s = corpora.at(pair);
    all.insert(all.end(), s.begin(), s.end());
  }
  return all;
}

// The included pairs that have a corpus; the rest get a note.
std::vector<std::string> available_pairs(const ExperimentSpec& spec,
                                         const TaggedCorpora& corpora,
                                         std::vector<std::string>& notes) {
  std::vector<std::string> out;
  for (const std::string& pair : spec.effective_pairs()) {
    auto it = corpora.find(pair);
    if (it == corpora.end() || it->second.empty()) {
      notes.push_back("skipped " + pair + ": no tagged corpus found");
    } else {
      out.push_back(pair);
    }
  }
  if (out.empty()) throw DataError("none of the requested pairs has a tagged corpus");
  return out;
}

std::vector<Chunk> pooled_chunks(const std::vector<TaggedSentence>& sentences,
                                 std::int64_t size, std::uint64_t seed) {
  ChunkingConfig config;
  config.size_tokens = size;
  config.mode = ChunkMode::kPooled;
  config.seed = derive_seed(seed, "chunks/pooled/" + std::to_string(size));
  return build_chunks(sentences, config);
}

std::string cell_key(std::string_view languages, std::int64_t size) {
  return std::string(languages) + "/" + std::to_string(size);
}

// Cells over one shared chunk set, one per (feature, k).
void add_cells(std::vector<CellFn>& cells, const ExperimentSpec& spec,
               std::shared_ptr<const std::vector<Chunk>> chunks,
               std::string languages, std::int64_t size,
               const std::vector<FeatureKind>& features, const std::vector<int>& ks) {
  const std::uint64_t balance_seed =
      derive_seed(spec.seed, "balance/" + cell_key(languages, size));
  const std::uint64_t cv_seed = derive_seed(spec.seed, "cv/" + cell_key(languages, size));
  for (FeatureKind feature : features) {
    std::vector<std::optional<int>> grid;
    if (ngram_order(feature) == 0) {
      grid.push_back(std::nullopt);
    } else {
      for (int k : ks) grid.push_back(k);
    }
    for (std::optional<int> k : grid) {
      cells.push_back([=, &spec](std::vector<std::string>& notes) {
        return evaluate_cell(*chunks, feature, k, spec, languages, size, balance_seed,
                             cv_seed, notes);
      });
    }
  }
}

}  // namespace

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::kTable2: return "table2";
    case Suite::kFig2ChunkSweep: return "fig2";
    case Suite::kFig3TopkSweep: return "fig3";
    case Suite::kCustom: return "custom";
  }
  return "";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::kTable2, Suite::kFig2ChunkSweep, Suite::kFig3TopkSweep,
                  Suite::kCustom}) {
    if (suite_name(s) == name) return s;
  }
  throw ConfigError("unknown experiment suite '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  if (features.empty()) throw ConfigError("experiment has no feature kinds");
  if (chunk_sizes.empty()) throw ConfigError("experiment has no chunk sizes");
  for (std::int64_t size : chunk_sizes) {
    if (size < 1) throw ConfigError("chunk sizes must be positive");
  }
  const bool needs_k = std::any_of(features.begin(), features.end(),
                                   [](FeatureKind f) { return ngram_order(f) > 0; });
  if (needs_k && top_ks.empty()) throw ConfigError("experiment has no top-k values");
  for (int k : top_ks) {
    if (k < 1) throw ConfigError("top-k values must be positive");
  }
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (pairs.empty()) throw ConfigError("experiment has no language pairs");
  for (const std::string& pair : pairs) LanguagePair::parse(pair);
  if (effective_pairs().empty()) {
    throw ConfigError("no language pairs left after excluding zh-en");
  }
  hyperparams.validate();
}

std::vector<std::string> ExperimentSpec::effective_pairs() const {
  std::vector<std::string> out;
  for (const std::string& pair : pairs) {
    const std::string code = LanguagePair::parse(pair).code();
    if (code == kChinesePair && !include_chinese) continue;
    if (std::find(out.begin(), out.end(), code) == out.end()) out.push_back(code);
  }
  return out;
}

ExperimentSpec default_experiment_spec(Suite suite) {
  ExperimentSpec spec;
  spec.suite = suite;
  switch (suite) {
    case Suite::kTable2:
      spec.features = {FeatureKind::kFw, FeatureKind::kPos3, FeatureKind::kPos2};
      spec.chunk_sizes = {2000};
      spec.top_ks = {400};
      break;
    case Suite::kFig2ChunkSweep:
      spec.features = {FeatureKind::kPos2};
      spec.chunk_sizes = {2000, 1500, 1000, 750, 700, 600};
      spec.top_ks = {400};
      break;
    case Suite::kFig3TopkSweep:
      spec.features = {FeatureKind::kFwPos3, FeatureKind::kFwPos2};
      spec.chunk_sizes = {2000};
      spec.top_ks = {100, 200, 300, 400, 500, 750, 1000};
      break;
    case Suite::kCustom:
      spec.features = {FeatureKind::kPos2};
      spec.chunk_sizes = {2000};
      spec.top_ks = {400};
      break;
  }
  return spec;
}

TaggedCorpora load_tagged_corpora(const std::vector<fs::path>& roots,
                                  const std::vector<std::string>& pairs) {
  TaggedCorpora corpora;
  for (const std::string& pair : pairs) {
    for (const fs::path& root : roots) {
      const fs::path file = root / (pair + ".tagged.jsonl");
      if (fs::is_regular_file(file)) {
        corpora[pair] = load_pretagged(file);
        break;
      }
    }
  }
  return corpora;
}

std::optional<ResultRow> evaluate_cell(std::vector<Chunk> chunks, FeatureKind feature,
                                       std::optional<int> top_k,
                                       const ExperimentSpec& spec,
                                       std::string_view languages,
                                       std::int64_t chunk_size,
                                       std::uint64_t balance_seed, std::uint64_t cv_seed,
                                       std::vector<std::string>& notes) {
  const ClassCounts counts = count_classes(chunks);
  const std::size_t balanced_size = 2 * std::min(counts.original, counts.translated);
  if (balanced_size < 2 * static_cast<std::size_t>(spec.folds)) {
    notes.push_back("skipped " + std::string(suite_name(spec.suite)) + " " +
                    std::string(languages) + " " +
                    std::string(feature_kind_name(feature)) + " at " +
                    std::to_string(chunk_size) + " tokens: " +
                    std::to_string(balanced_size) + " balanced chunks, need " +
                    std::to_string(2 * spec.folds));
    return std::nullopt;
  }
  std::vector<Chunk> balanced = balance(std::move(chunks), balance_seed);

  FeatureRecipe recipe;
  recipe.kind = feature;
  recipe.fw_list = spec.fw_list ? spec.fw_list : FunctionWordList::default_english();
  if (top_k) recipe.top_k = *top_k;
  Hyperparams hp = spec.hyperparams;
  hp.seed = cv_seed;

  const ChunkFeaturizer featurizer(balanced, recipe);
  CvReport report;
  if (spec.global_vocab) {
    const FeatureSpec fitted = featurizer.fit_all();
    std::vector<FeatureVector> dataset;
    dataset.reserve(balanced.size());
    for (std::size_t i = 0; i < balanced.size(); ++i) {
      dataset.push_back(featurizer.transform(i, fitted));
    }
    report = cross_validate(dataset, spec.folds, hp);
  } else {
    report = cross_validate(featurizer, spec.folds, hp);
  }

  ResultRow row;
  row.suite = std::string(suite_name(spec.suite));
  row.languages = std::string(languages);
  row.feature = feature;
  row.chunk_size = chunk_size;
  row.top_k = top_k_for(feature, recipe.top_k);
  row.model = hp.model_kind;
  row.folds = spec.folds;
  row.mean_accuracy = report.mean;
  row.std = report.std;
  row.n_samples = static_cast<std::int64_t>(balanced.size());
  row.seed = spec.seed;
  return row;
}

ExperimentResult run_table2(const ExperimentSpec& spec, const TaggedCorpora& corpora) {
  spec.validate();
  std::vector<std::string> notes;
  const std::vector<std::string> pairs = available_pairs(spec, corpora, notes);
  const std::int64_t size = spec.chunk_sizes.front();

  ChunkingConfig homogeneous;
  homogeneous.size_tokens = size;
  auto all = std::make_shared<std::vector<Chunk>>();
  std::vector<CellFn> cells;
  for (const std::string& pair : pairs) {
    auto chunks = std::make_shared<const std::vector<Chunk>>(
        build_chunks(corpora.at(pair), homogeneous));
    all->insert(all->end(), chunks->begin(), chunks->end());
    add_cells(cells, spec, chunks, pair, size, spec.features, spec.top_ks);
  }
  add_cells(cells, spec, all, std::string(kAllLanguages), size, spec.features,
            spec.top_ks);
  auto pooled = std::make_shared<const std::vector<Chunk>>(
      pooled_chunks(concatenate(corpora, pairs), size, spec.seed));
  add_cells(cells, spec, pooled, std::string(kPooled), size, spec.features,
            spec.top_ks);
  return run_cells(cells, spec.jobs, std::move(notes));
}

ExperimentResult run_chunk_size_sweep(const ExperimentSpec& spec,
                                      const TaggedCorpora& corpora) {
  spec.validate();
  std::vector<std::string> notes;
  const std::vector<TaggedSentence> sentences =
      concatenate(corpora, available_pairs(spec, corpora, notes));
  std::vector<CellFn> cells;
  for (std::int64_t size : spec.chunk_sizes) {
    auto chunks = std::make_shared<const std::vector<Chunk>>(
        pooled_chunks(sentences, size, spec.seed));
    add_cells(cells, spec, chunks, std::string(kPooled), size, spec.features,
              spec.top_ks);
  }
  return run_cells(cells, spec.jobs, std::move(notes));
}

ExperimentResult run_topk_sweep(const ExperimentSpec& spec,
                                const TaggedCorpora& corpora) {
  spec.validate();
  std::vector<std::string> notes;
  const std::int64_t size = spec.chunk_sizes.front();
  auto chunks = std::make_shared<const std::vector<Chunk>>(pooled_chunks(
      concatenate(corpora, available_pairs(spec, corpora, notes)), size, spec.seed));
  std::vector<CellFn> cells;
  add_cells(cells, spec, chunks, std::string(kPooled), size, spec.features,
            spec.top_ks);
  return run_cells(cells, spec.jobs, std::move(notes));
}

ExperimentResult run_custom(const ExperimentSpec& spec, const TaggedCorpora& corpora) {
  return run_chunk_size_sweep(spec, corpora);
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const TaggedCorpora& corpora) {
  switch (spec.suite) {
    case Suite::kTable2: return run_table2(spec, corpora);
    case Suite::kFig2ChunkSweep: return run_chunk_size_sweep(spec, corpora);
    case Suite::kFig3TopkSweep: return run_topk_sweep(spec, corpora);
    case Suite::kCustom: return run_custom(spec, corpora);
  }
  throw std::logic_error("unhandled suite");
}

}  // namespace transdir
