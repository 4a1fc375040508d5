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

#include "transdir/learner.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "transdir/errors.h"
#include "transdir/random.h"

namespace transdir {
namespace {

constexpr std::string_view kModelFormat = "transdir-linear";

double sign_of(DirectionLabel label) {
  return label == DirectionLabel::kTranslated ? 1.0 : -1.0;
}

// d loss / d margin.
double loss_slope(ModelKind kind, double margin) {
  if (kind == ModelKind::kLogistic) return -1.0 / (1.0 + std::exp(margin));
  return margin < 1.0 ? -1.0 : 0.0;
}

double loss_at(ModelKind kind, double margin) {
  if (kind == ModelKind::kLogistic) {
    return margin > 0.0 ? std::log1p(std::exp(-margin))
                        : -margin + std::log1p(std::exp(margin));
  }
  return std::max(0.0, 1.0 - margin);
}

Eigen::Index common_dimension(std::span<const FeatureVector> dataset) {
  const Eigen::Index d = dataset.front().dimension();
  for (const FeatureVector& x : dataset) {
    if (x.dimension() != d) {
      throw DataError("dataset mixes feature dimensions " + std::to_string(d) +
                      " and " + std::to_string(x.dimension()));
    }
  }
  return d;
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  return kind == ModelKind::kLogistic ? "logistic" : "svm";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "logistic" || name == "lr") return ModelKind::kLogistic;
  if (name == "svm" || name == "linear_svm") return ModelKind::kLinearSvm;
  throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

void Hyperparams::validate() const {
  if (!(l2_lambda >= 0.0)) throw ConfigError("l2 lambda must be >= 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(eta0 > 0.0)) throw ConfigError("eta0 must be > 0");
}

DirectionLabel predict(const LinearModel& model, const FeatureVector& x) {
  return decision_value(model, x.values) > 0.0 ? DirectionLabel::kTranslated
                                               : DirectionLabel::kOriginal;
}

LinearModel train(std::span<const FeatureVector> dataset, const Hyperparams& hp) {
  hp.validate();
  if (dataset.empty()) throw ConfigError("cannot train on an empty dataset");
  const Eigen::Index d = common_dimension(dataset);
  bool seen[2] = {false, false};
  for (const FeatureVector& x : dataset) seen[label_value(x.label)] = true;
  if (!seen[0] || !seen[1]) {
    throw ConfigError("training data contains a single class");
  }

  // w = scale * v, so the L2 shrink is O(1) per step.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  double scale = 1.0;
  double bias = 0.0;
  Eigen::VectorXd w_avg = Eigen::VectorXd::Zero(d);
  double bias_avg = 0.0;
  std::int64_t t = 0;
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    Rng rng(derive_seed(hp.seed, static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const FeatureVector& x = dataset[i];
      const double y = sign_of(x.label);
      const double eta =
          hp.eta0 / (1.0 + hp.eta0 * hp.l2_lambda * static_cast<double>(t));
      const double margin = y * (scale * x.values.dot(v) + bias);
      const double slope = loss_slope(hp.model_kind, margin);

      const double shrink = 1.0 - eta * hp.l2_lambda;
      if (shrink <= 0.0) {
        v.setZero();
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (slope != 0.0) {
        const double step = -eta * slope * y;
        for (Eigen::SparseVector<double>::InnerIterator it(x.values); it; ++it) {
          v[it.index()] += step / scale * it.value();
        }
        bias += step;
      }
      if (scale < 1e-9) {
        v *= scale;
        scale = 1.0;
      }
      ++t;
      if (hp.average) {
        const double r = 1.0 / static_cast<double>(t);
        w_avg += r * (scale * v - w_avg);
        bias_avg += r * (bias - bias_avg);
      }
    }
  }

  LinearModel model;
  model.weights = hp.average ? w_avg : Eigen::VectorXd(scale * v);
  model.bias = hp.average ? bias_avg : bias;
  return model;
}

double training_loss(const LinearModel& model,
                     std::span<const FeatureVector> dataset, ModelKind kind) {
  if (dataset.empty()) return 0.0;
  double total = 0.0;
  for (const FeatureVector& x : dataset) {
    total += loss_at(kind, sign_of(x.label) * decision_value(model, x.values));
  }
  return total / static_cast<double>(dataset.size());
}

double accuracy(std::span<const DirectionLabel> predictions,
                std::span<const DirectionLabel> golds) {
  if (predictions.size() != golds.size()) {
    throw DataError("accuracy: prediction and gold counts differ");
  }
  if (golds.empty()) throw DataError("accuracy: no examples");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) correct += predictions[i] == golds[i];
  return static_cast<double>(correct) / static_cast<double>(golds.size());
}

std::vector<int> stratified_folds(std::span<const DirectionLabel> labels, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw ConfigError("cross-validation needs k >= 2");
  std::vector<std::size_t> members[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[label_value(labels[i])].push_back(i);
  }
  const std::size_t smallest = std::min(members[0].size(), members[1].size());
  if (static_cast<std::size_t>(k) > smallest) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds the smaller class (" +
                      std::to_string(smallest) + " examples)");
  }
  std::vector<int> fold(labels.size(), -1);
  std::size_t next = 0;
  for (int c = 0; c < 2; ++c) {
    Rng rng(derive_seed(seed, std::string("folds/") + std::to_string(c)));
    std::shuffle(members[c].begin(), members[c].end(), rng);
    for (std::size_t i : members[c]) {
      fold[i] = static_cast<int>(next % static_cast<std::size_t>(k));
      ++next;
    }
  }
  return fold;
}

CvReport cross_validate(std::span<const DirectionLabel> labels, int k,
                        const Hyperparams& hp, const FoldFeaturizer& featurize) {
  hp.validate();
  const std::vector<int> fold = stratified_folds(labels, k, hp.seed);

  CvReport report;
  report.k = k;
  report.seed = hp.seed;
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (fold[i] == f ? test_idx : train_idx).push_back(i);
    }
    const FoldData data = featurize(train_idx, test_idx);
    if (data.test.size() != test_idx.size() || data.train.size() != train_idx.size()) {
      throw std::logic_error("fold featurizer returned the wrong number of vectors");
    }
    Hyperparams fold_hp = hp;
    fold_hp.seed = derive_seed(hp.seed, static_cast<std::uint64_t>(f));
    const LinearModel model = train(data.train, fold_hp);

    std::vector<DirectionLabel> predicted, gold;
    for (const FeatureVector& x : data.test) {
      const DirectionLabel p = predict(model, x);
      predicted.push_back(p);
      gold.push_back(x.label);
      const bool positive = p == DirectionLabel::kTranslated;
      const bool actual = x.label == DirectionLabel::kTranslated;
      if (positive && actual) {
        ++report.confusion.tp;
      } else if (positive) {
        ++report.confusion.fp;
      } else if (actual) {
        ++report.confusion.fn;
      } else {
        ++report.confusion.tn;
      }
    }
    report.per_fold_accuracy.push_back(accuracy(predicted, gold));
  }
  const double n = static_cast<double>(k);
  report.mean = std::accumulate(report.per_fold_accuracy.begin(),
                                report.per_fold_accuracy.end(), 0.0) / n;
  double sq = 0.0;
  for (double a : report.per_fold_accuracy) sq += (a - report.mean) * (a - report.mean);
  report.std = std::sqrt(sq / n);
  return report;
}

CvReport cross_validate(std::span<const FeatureVector> dataset, int k,
                        const Hyperparams& hp) {
  std::vector<DirectionLabel> labels;
  labels.reserve(dataset.size());
  for (const FeatureVector& x : dataset) labels.push_back(x.label);
  return cross_validate(labels, k, hp,
                        [&](std::span<const std::size_t> train_idx,
                            std::span<const std::size_t> test_idx) {
                          FoldData data;
                          for (std::size_t i : train_idx) data.train.push_back(dataset[i]);
                          for (std::size_t i : test_idx) data.test.push_back(dataset[i]);
                          return data;
                        });
}

CvReport cross_validate(const ChunkFeaturizer& featurizer, int k,
                        const Hyperparams& hp) {
  std::vector<DirectionLabel> labels;
  labels.reserve(featurizer.size());
  for (std::size_t i = 0; i < featurizer.size(); ++i) labels.push_back(featurizer.label(i));
  return cross_validate(labels, k, hp,
                        [&](std::span<const std::size_t> train_idx,
                            std::span<const std::size_t> test_idx) {
                          const FeatureSpec spec = featurizer.fit(train_idx);
                          FoldData data;
                          for (std::size_t i : train_idx) {
                            data.train.push_back(featurizer.transform(i, spec));
                          }
                          for (std::size_t i : test_idx) {
                            data.test.push_back(featurizer.transform(i, spec));
                          }
                          return data;
                        });
}

std::string cv_report_to_json(const CvReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["per_fold_accuracy"] = report.per_fold_accuracy;
  j["mean"] = report.mean;
  j["std"] = report.std;
  j["confusion"] = {{"tp", report.confusion.tp},
                    {"fp", report.confusion.fp},
                    {"tn", report.confusion.tn},
                    {"fn", report.confusion.fn}};
  j["n"] = report.size();
  return j.dump(2) + "\n";
}

CvReport cv_report_from_json(std::string_view text) {
  CvReport report;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    report.k = j.at("k").get<int>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.per_fold_accuracy = j.at("per_fold_accuracy").get<std::vector<double>>();
    report.mean = j.at("mean").get<double>();
    report.std = j.at("std").get<double>();
    const nlohmann::json& c = j.at("confusion");
    report.confusion = {c.at("tp").get<std::int64_t>(), c.at("fp").get<std::int64_t>(),
                        c.at("tn").get<std::int64_t>(), c.at("fn").get<std::int64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed cv report: ") + e.what());
  }
  return report;
}

std::string model_to_json(const LinearModel& model, const Hyperparams& hp) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = 1;
  j["model"] = model_kind_name(hp.model_kind);
  j["hyperparams"] = {{"l2_lambda", hp.l2_lambda},
                      {"epochs", hp.epochs},
                      {"eta0", hp.eta0},
                      {"seed", hp.seed}};
  j["spec_hash"] = model.spec_hash;
  j["bias"] = model.bias;
  j["weights"] = std::vector<double>(model.weights.data(),
                                     model.weights.data() + model.weights.size());
  return j.dump() + "\n";
}

LinearModel model_from_json(std::string_view text) {
  LinearModel model;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat) {
      throw DataError("not a linear model file");
    }
    const auto weights = j.at("weights").get<std::vector<double>>();
    model.weights = Eigen::Map<const Eigen::VectorXd>(
        weights.data(), static_cast<Eigen::Index>(weights.size()));
    model.bias = j.at("bias").get<double>();
    model.spec_hash = j.at("spec_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
  return model;
}

}  // namespace transdir
