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

// transdir: derive translation-direction corpora and run the classification
// experiments over them.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "transdir/chunking.h"
#include "transdir/corpus.h"
#include "transdir/errors.h"
#include "transdir/experiments.h"
#include "transdir/features.h"
#include "transdir/learner.h"
#include "transdir/random.h"
#include "transdir/synth.h"
#include "transdir/tagger.h"
#include "transdir/text.h"

namespace fs = std::filesystem;
using namespace transdir;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string config;
};

void log(const std::string& message) { std::cerr << "transdir: " << message << "\n"; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw IoError("cannot write " + path.string());
}

void require(const CLI::Option* option) {
  if (option->count() == 0) {
    throw ConfigError(option->get_name() + " is required");
  }
}

std::string json_scalar(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  return value.dump();
}

// Feeds values from the --config file to options not given on the command
// line. Top-level keys apply everywhere; an object keyed by a subcommand
// name applies to that subcommand and overrides top-level keys.
void apply_config(CLI::App& app, const nlohmann::json& root,
                  const nlohmann::json* section) {
  for (CLI::Option* option : app.get_options()) {
    const std::string& name = option->get_single_name();
    if (name.empty() || name == "help" || option->count() > 0) continue;
    const nlohmann::json* value = nullptr;
    if (section && section->contains(name)) {
      value = &section->at(name);
    } else if (root.contains(name) && !root.at(name).is_object()) {
      value = &root.at(name);
    }
    if (!value) continue;
    if (value->is_array()) {
      std::vector<std::string> items;
      for (const nlohmann::json& item : *value) items.push_back(json_scalar(item));
      option->add_result(items);
    } else {
      option->add_result(json_scalar(*value));
    }
    option->run_callback();
  }
  for (CLI::App* sub : app.get_subcommands()) {
    const std::string& name = sub->get_name();
    const nlohmann::json* nested =
        root.contains(name) && root.at(name).is_object() ? &root.at(name) : nullptr;
    apply_config(*sub, root, nested);
  }
}

std::vector<FeatureKind> parse_features(const std::vector<std::string>& names) {
  std::vector<FeatureKind> out;
  for (const std::string& n : names) out.push_back(parse_feature_kind(n));
  return out;
}

std::shared_ptr<const FunctionWordList> fw_list_from(const std::string& path) {
  if (path.empty()) return FunctionWordList::default_english();
  return std::make_shared<const FunctionWordList>(FunctionWordList::load(path));
}

// ---------------------------------------------------------------------------

struct DeriveCommand {
  std::string corpus_root, out;
  std::vector<std::string> pairs;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("derive", "Derive direction-annotated parallel files");
    sub->add_option("--corpus-root", corpus_root, "Root holding {xx}/, en/ and {xx}_en/");
    sub->add_option("--pair", pairs, "Language pairs, e.g. fr-en (repeatable)");
    sub->add_option("--out", out, "Output directory");
  }

  int run(CLI::App& sub) {
    require(sub.get_option("--corpus-root"));
    require(sub.get_option("--pair"));
    require(sub.get_option("--out"));
    for (const std::string& code : pairs) {
      const LanguagePair pair = LanguagePair::parse(code);
      const Derivation d = derive_pair(corpus_root, pair);
      write_derivation(d, out, pair);
      log(pair.code() + ": " + std::to_string(d.sentences.size()) + " sentences, " +
          std::to_string(d.rejects.size()) + " rejects");
    }
    return 0;
  }
};

struct TrainTaggerCommand {
  std::string train, dev, out;
  int epochs = 5;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("train-tagger", "Train the averaged perceptron tagger");
    sub->add_option("--train", train, "Training data, token TAB tag per line");
    sub->add_option("--dev", dev, "Held-out data in the same format");
    sub->add_option("--epochs", epochs, "Training passes")->capture_default_str();
    sub->add_option("--out", out, "Model file");
  }

  int run(CLI::App& sub, const GlobalOptions& global) {
    require(sub.get_option("--train"));
    require(sub.get_option("--out"));
    const auto corpus = read_training_tsv(train);
    std::vector<TaggedExample> held_out;
    if (!dev.empty()) held_out = read_training_tsv(dev);
    const TaggerModel model = train_tagger(corpus, epochs, global.seed, held_out,
                                           fs::path(train).filename().string());
    model.save(out);
    std::string message = "tagger trained on " + std::to_string(corpus.size()) + " sentences";
    if (model.metadata().dev_accuracy) {
      message += ", dev accuracy " + std::to_string(*model.metadata().dev_accuracy);
    }
    log(message);
    return 0;
  }
};

struct TagCommand {
  std::string model, derived, out;
  std::vector<std::string> pairs;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("tag", "Tokenize and tag the English side of derived files");
    sub->add_option("--model", model, "Tagger model");
    sub->add_option("--derived", derived, "Directory written by derive");
    sub->add_option("--pair", pairs, "Language pairs (repeatable)");
    sub->add_option("--out", out, "Output directory for {pair}.tagged.jsonl");
  }

  int run(CLI::App& sub) {
    require(sub.get_option("--model"));
    require(sub.get_option("--derived"));
    require(sub.get_option("--pair"));
    require(sub.get_option("--out"));
    const TaggerModel tagger = TaggerModel::load(model);
    for (const std::string& code : pairs) {
      const LanguagePair pair = LanguagePair::parse(code);
      const auto tagged = tag_aligned(read_parallel_files(derived, pair), pair, tagger);
      write_pretagged(fs::path(out) / (pair.code() + ".tagged.jsonl"), tagged);
      log(pair.code() + ": tagged " + std::to_string(tagged.size()) + " sentences");
    }
    return 0;
  }
};

struct ChunkCommand {
  std::vector<std::string> inputs;
  std::string out, mode = "homogeneous";
  std::int64_t size = 2000;
  bool keep_partial = false, dedup = false, balanced = false;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("chunk", "Group tagged sentences into labelled chunks");
    sub->add_option("--input", inputs, "Tagged JSONL files (repeatable)");
    sub->add_option("--size", size, "Tokens per chunk")->capture_default_str();
    sub->add_option("--mode", mode, "homogeneous or pooled")
        ->check(CLI::IsMember({"homogeneous", "pooled"}))
        ->capture_default_str();
    sub->add_flag("--keep-partial", keep_partial, "Keep the undersized last chunk");
    sub->add_flag("--dedup", dedup, "Drop repeated sentences before pooling");
    sub->add_flag("--balance", balanced, "Subsample the larger class");
    sub->add_option("--out", out, "Chunk file");
  }

  int run(CLI::App& sub, const GlobalOptions& global) {
    require(sub.get_option("--input"));
    require(sub.get_option("--out"));
    if (size < 1) throw ConfigError("--size must be positive");
    std::vector<TaggedSentence> sentences;
    for (const std::string& path : inputs) {
      auto part = load_pretagged(path);
      sentences.insert(sentences.end(), part.begin(), part.end());
    }
    ChunkingConfig config;
    config.size_tokens = size;
    config.mode = mode == "pooled" ? ChunkMode::kPooled : ChunkMode::kHomogeneous;
    config.seed = global.seed;
    config.drop_partial_final = !keep_partial;
    config.dedup = dedup;
    std::vector<Chunk> chunks = build_chunks(sentences, config);
    if (balanced) chunks = balance(std::move(chunks), global.seed);
    write_chunks(out, chunks);
    const ClassCounts counts = count_classes(chunks);
    log(std::to_string(chunks.size()) + " chunks (" + std::to_string(counts.original) +
        " O, " + std::to_string(counts.translated) + " T)");
    return 0;
  }
};

struct FeaturizeCommand {
  std::string chunks, feature = "POS2", fw_list, out, manifest;
  int top_k = 400;
  bool normalize_pos = false;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("featurize", "Vectorize chunks");
    sub->add_option("--chunks", chunks, "Chunk file");
    sub->add_option("--feature", feature, "FW, POS2, POS3, FW_POS2 or FW_POS3")
        ->capture_default_str();
    sub->add_option("--top-k", top_k, "Most frequent n-grams kept")->capture_default_str();
    sub->add_option("--fw-list", fw_list, "Function word list, one per line");
    sub->add_flag("--normalize-pos", normalize_pos, "Scale n-gram counts like FW rates");
    sub->add_option("--out", out, "Dataset JSONL");
    sub->add_option("--manifest", manifest, "Feature spec manifest (JSON)");
  }

  int run(CLI::App& sub) {
    require(sub.get_option("--chunks"));
    require(sub.get_option("--out"));
    const std::vector<Chunk> loaded = load_chunks(chunks);
    FeatureRecipe recipe;
    recipe.kind = parse_feature_kind(feature);
    recipe.fw_list = fw_list_from(fw_list);
    recipe.top_k = top_k;
    recipe.normalize_pos = normalize_pos;
    const ChunkFeaturizer featurizer(loaded, recipe);
    const FeatureSpec spec = featurizer.fit_all();
    std::vector<FeatureVector> vectors;
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      vectors.push_back(featurizer.transform(i, spec));
    }
    write_dataset(out, vectors);
    if (!manifest.empty()) write_text(manifest, spec_manifest(spec));
    log(std::to_string(vectors.size()) + " vectors of dimension " +
        std::to_string(spec.dimension()));
    return 0;
  }
};

struct CvCommand {
  std::string dataset, chunks, feature = "POS2", fw_list, model = "logistic", out,
              save_model;
  int top_k = 400, folds = 10, epochs = 20;
  double lambda = 1e-4, eta0 = 0.1;
  bool global_vocab = false;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("cv", "Stratified k-fold cross-validation");
    sub->add_option("--dataset", dataset, "Precomputed dataset JSONL");
    sub->add_option("--chunks", chunks, "Chunk file; vocabulary refit per fold");
    sub->add_option("--feature", feature, "Feature kind for --chunks")->capture_default_str();
    sub->add_option("--top-k", top_k, "Most frequent n-grams kept")->capture_default_str();
    sub->add_option("--fw-list", fw_list, "Function word list");
    sub->add_flag("--global-vocab", global_vocab,
                  "Choose the vocabulary on all chunks instead of per fold");
    sub->add_option("--model", model, "logistic or svm")->capture_default_str();
    sub->add_option("--folds", folds, "Number of folds")->capture_default_str();
    sub->add_option("--epochs", epochs, "SGD passes")->capture_default_str();
    sub->add_option("--lambda", lambda, "L2 strength")->capture_default_str();
    sub->add_option("--eta0", eta0, "Initial step size")->capture_default_str();
    sub->add_option("--out", out, "cv_report.json");
    sub->add_option("--save-model", save_model, "Also train on everything and save");
  }

  int run(CLI::App& sub, const GlobalOptions& global) {
    require(sub.get_option("--out"));
    if (dataset.empty() == chunks.empty()) {
      throw ConfigError("give exactly one of --dataset and --chunks");
    }
    Hyperparams hp;
    hp.model_kind = parse_model_kind(model);
    hp.l2_lambda = lambda;
    hp.epochs = epochs;
    hp.eta0 = eta0;
    hp.seed = global.seed;
    hp.validate();

    CvReport report;
    std::vector<FeatureVector> all;
    std::string hash;
    if (!dataset.empty()) {
      all = load_dataset(dataset);
      report = cross_validate(all, folds, hp);
    } else {
      const std::vector<Chunk> loaded = load_chunks(chunks);
      FeatureRecipe recipe;
      recipe.kind = parse_feature_kind(feature);
      recipe.fw_list = fw_list_from(fw_list);
      recipe.top_k = top_k;
      const ChunkFeaturizer featurizer(loaded, recipe);
      const FeatureSpec spec = featurizer.fit_all();
      hash = spec_hash(spec);
      for (std::size_t i = 0; i < loaded.size(); ++i) {
        all.push_back(featurizer.transform(i, spec));
      }
      report = global_vocab ? cross_validate(all, folds, hp)
                            : cross_validate(featurizer, folds, hp);
    }
    write_text(out, cv_report_to_json(report));
    if (!save_model.empty()) {
      LinearModel trained = train(all, hp);
      trained.spec_hash = hash;
      write_text(save_model, model_to_json(trained, hp));
    }
    log("mean accuracy " + std::to_string(report.mean) + " over " +
        std::to_string(report.k) + " folds");
    return 0;
  }
};

struct SynthCommand {
  std::string out, synth_config, gold_dir;
  std::vector<std::string> languages;
  double delta = 0.4, nuisance = 0.0;
  int docs_per_class = 20, sentences_per_doc = 100, tagger_sentences = 2000;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("synth", "Generate a synthetic corpus with known labels");
    sub->add_option("--out", out, "Corpus root");
    sub->add_option("--synth-config", synth_config, "Full generator config (JSON)");
    sub->add_option("--languages", languages, "Foreign language codes")
        ->default_str("fr");
    sub->add_option("--delta", delta, "Direction signal strength")->capture_default_str();
    sub->add_option("--nuisance", nuisance, "Pair/document drift weight")
        ->capture_default_str();
    sub->add_option("--docs-per-class", docs_per_class, "Documents per pair and class")
        ->capture_default_str();
    sub->add_option("--sentences-per-doc", sentences_per_doc, "Sentences per document")
        ->capture_default_str();
    sub->add_option("--tagger-sentences", tagger_sentences,
                    "Sentences in tagger_train.tsv (0 to skip)")
        ->capture_default_str();
    sub->add_option("--gold-tagged", gold_dir,
                    "Also write gold {pair}.tagged.jsonl files here");
  }

  int run(CLI::App& sub, const GlobalOptions& global) {
    require(sub.get_option("--out"));
    SynthConfig config = synth_config.empty()
                             ? default_synth_config(global.seed)
                             : synth_config_from_json(read_text(synth_config));
    auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
    if (synth_config.empty() || given("--delta")) config.delta = delta;
    if (synth_config.empty() || given("--nuisance")) config.nuisance = nuisance;
    if (synth_config.empty() || given("--docs-per-class")) config.docs_per_class = docs_per_class;
    if (synth_config.empty() || given("--sentences-per-doc")) {
      config.sentences_per_doc = sentences_per_doc;
    }
    if (!languages.empty()) config.foreign_languages = languages;
    config.validate();

    const GroundTruth truth = generate_corpus(config, out);
    write_text(fs::path(out) / "synth_config.json", synth_config_to_json(config));
    if (tagger_sentences > 0) {
      const auto training = generate_tagger_training(
          config, tagger_sentences, derive_seed(config.seed, "tagger"));
      write_text(fs::path(out) / "tagger_train.tsv", format_training_tsv(training));
    }
    if (!gold_dir.empty()) {
      std::map<std::string, std::vector<TaggedSentence>> by_pair;
      for (TaggedSentence& s : generate_sentences(config)) {
        by_pair[s.pair].push_back(std::move(s));
      }
      for (const auto& [pair, sentences] : by_pair) {
        write_pretagged(fs::path(gold_dir) / (pair + ".tagged.jsonl"), sentences);
      }
    }
    log(std::to_string(truth.documents.size()) + " documents written to " + out);
    return 0;
  }
};

struct ExperimentCommand {
  std::string suite, out, model = "logistic", fw_list;
  std::vector<std::string> corpora, pairs, features;
  std::vector<std::int64_t> sizes;
  std::vector<int> top_ks;
  int folds = 10, epochs = 20;
  double lambda = 1e-4, eta0 = 0.1;
  bool global_vocab = false, include_chinese = false;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("experiment", "Run an experiment suite");
    sub->add_option("suite", suite, "table2, fig2, fig3 or custom")
        ->check(CLI::IsMember({"table2", "fig2", "fig3", "custom"}));
    sub->add_option("--corpus", corpora, "Directories with {pair}.tagged.jsonl");
    sub->add_option("--pairs", pairs, "Language pairs (default fr-en es-en ru-en ar-en)");
    sub->add_option("--features", features, "Feature kinds (suite default)");
    sub->add_option("--sizes", sizes, "Chunk sizes in tokens (suite default)");
    sub->add_option("--top-k", top_ks, "Top-k grid (suite default)");
    sub->add_option("--fw-list", fw_list, "Function word list");
    sub->add_option("--model", model, "logistic or svm")->capture_default_str();
    sub->add_option("--folds", folds, "Number of folds")->capture_default_str();
    sub->add_option("--epochs", epochs, "SGD passes")->capture_default_str();
    sub->add_option("--lambda", lambda, "L2 strength")->capture_default_str();
    sub->add_option("--eta0", eta0, "Initial step size")->capture_default_str();
    sub->add_flag("--global-vocab", global_vocab,
                  "Choose the vocabulary on all chunks instead of per fold");
    sub->add_flag("--include-chinese", include_chinese, "Keep zh-en in the pair list");
    sub->add_option("--out", out, "Report directory");
  }

  int run(CLI::App& sub, const GlobalOptions& global) {
    require(sub.get_option("suite"));
    require(sub.get_option("--corpus"));
    require(sub.get_option("--out"));
    ExperimentSpec spec = default_experiment_spec(parse_suite(suite));
    spec.corpus_roots.assign(corpora.begin(), corpora.end());
    if (!pairs.empty()) spec.pairs = pairs;
    if (!features.empty()) spec.features = parse_features(features);
    if (!sizes.empty()) spec.chunk_sizes = sizes;
    if (!top_ks.empty()) spec.top_ks = top_ks;
    spec.folds = folds;
    spec.hyperparams.model_kind = parse_model_kind(model);
    spec.hyperparams.epochs = epochs;
    spec.hyperparams.l2_lambda = lambda;
    spec.hyperparams.eta0 = eta0;
    spec.seed = global.seed;
    spec.jobs = global.jobs;
    spec.global_vocab = global_vocab;
    spec.include_chinese = include_chinese;
    spec.fw_list = fw_list_from(fw_list);
    spec.validate();

    const TaggedCorpora tagged =
        load_tagged_corpora(spec.corpus_roots, spec.effective_pairs());
    const ExperimentResult result = run_experiment(spec, tagged);
    for (const std::string& note : result.notes) log(note);
    if (result.rows.empty()) throw DataError("every experiment cell was skipped");
    for (const fs::path& p : emit_report(result.rows, result.notes, out)) {
      log("wrote " + p.string());
    }
    return 0;
  }
};

struct ReportCommand {
  std::string results, out;

  void setup(CLI::App& app) {
    auto* sub = app.add_subcommand("report", "Rebuild summary and plot data from results.csv");
    sub->add_option("--results", results, "results.csv");
    sub->add_option("--out", out, "Report directory");
  }

  int run(CLI::App& sub) {
    require(sub.get_option("--results"));
    require(sub.get_option("--out"));
    const std::vector<ResultRow> rows = read_results_csv(results);
    for (const fs::path& p : emit_report(rows, {}, out)) log("wrote " + p.string());
    return 0;
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"Translation direction corpora and classifiers"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", global.jobs, "Parallel experiment cells")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--config", global.config, "JSON file with flag values; flags win");

  DeriveCommand derive;
  TrainTaggerCommand train_tagger_cmd;
  TagCommand tag_cmd;
  ChunkCommand chunk;
  FeaturizeCommand featurize;
  CvCommand cv;
  SynthCommand synth;
  ExperimentCommand experiment;
  ReportCommand report;
  derive.setup(app);
  train_tagger_cmd.setup(app);
  tag_cmd.setup(app);
  chunk.setup(app);
  featurize.setup(app);
  cv.setup(app);
  synth.setup(app);
  experiment.setup(app);
  report.setup(app);

  try {
    app.parse(argc, argv);
    if (!global.config.empty()) {
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(read_text(global.config));
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config " + global.config + ": " + e.what());
      }
      if (!config.is_object()) throw ConfigError("config must be a JSON object");
      apply_config(app, config, nullptr);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kConfig);
  }

  CLI::App& sub = *app.get_subcommands().front();
  const std::string name = sub.get_name();
  if (name == "derive") return derive.run(sub);
  if (name == "train-tagger") return train_tagger_cmd.run(sub, global);
  if (name == "tag") return tag_cmd.run(sub);
  if (name == "chunk") return chunk.run(sub, global);
  if (name == "featurize") return featurize.run(sub);
  if (name == "cv") return cv.run(sub, global);
  if (name == "synth") return synth.run(sub, global);
  if (name == "experiment") return experiment.run(sub, global);
  if (name == "report") return report.run(sub);
  return static_cast<int>(ExitCode::kConfig);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    std::cerr << "transdir: error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const CLI::Error& e) {
    std::cerr << "transdir: error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kConfig);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "transdir: error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kIo);
  } catch (const std::exception& e) {
    std::cerr << "transdir: error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kData);
  }
}
