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
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "transdir/errors.h"

namespace transdir {
namespace {

FeatureVector Dense(const std::vector<double>& x, DirectionLabel label) {
  FeatureVector v;
  v.values.resize(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) v.values.insert(static_cast<Eigen::Index>(i)) = x[i];
  }
  v.label = label;
  return v;
}

// Class decided by the sign of x0.
std::vector<FeatureVector> Separable(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FeatureVector> data;
  for (int i = 0; i < n; ++i) {
    double x0 = u(rng);
    if (std::abs(x0) < 0.1) x0 = x0 < 0 ? -0.1 : 0.1;
    data.push_back(Dense({x0, u(rng)}, x0 > 0 ? DirectionLabel::kTranslated
                                              : DirectionLabel::kOriginal));
  }
  return data;
}

std::vector<DirectionLabel> Labels(std::span<const FeatureVector> data) {
  std::vector<DirectionLabel> labels;
  for (const FeatureVector& x : data) labels.push_back(x.label);
  return labels;
}

TEST(ModelKindTest, Names) {
  EXPECT_EQ(parse_model_kind("logistic"), ModelKind::kLogistic);
  EXPECT_EQ(parse_model_kind("svm"), ModelKind::kLinearSvm);
  EXPECT_THROW(parse_model_kind("tree"), ConfigError);
}

TEST(HyperparamsTest, Validation) {
  Hyperparams hp;
  EXPECT_NO_THROW(hp.validate());
  hp.l2_lambda = -1;
  EXPECT_THROW(hp.validate(), ConfigError);
  hp = Hyperparams();
  hp.epochs = 0;
  EXPECT_THROW(hp.validate(), ConfigError);
  hp = Hyperparams();
  hp.eta0 = 0;
  EXPECT_THROW(hp.validate(), ConfigError);
}

TEST(TrainTest, SeparableDataIsLearned) {
  const auto data = Separable(200, 1);
  for (ModelKind kind : {ModelKind::kLogistic, ModelKind::kLinearSvm}) {
    Hyperparams hp;
    hp.model_kind = kind;
    hp.seed = 3;
    const LinearModel model = train(data, hp);
    std::vector<DirectionLabel> predictions;
    for (const FeatureVector& x : data) predictions.push_back(predict(model, x));
    EXPECT_DOUBLE_EQ(accuracy(predictions, Labels(data)), 1.0)
        << model_kind_name(kind);
  }
}

TEST(TrainTest, Deterministic) {
  const auto data = Separable(100, 2);
  Hyperparams hp;
  hp.seed = 11;
  const LinearModel a = train(data, hp), b = train(data, hp);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  EXPECT_EQ(model_to_json(a, hp), model_to_json(b, hp));
}

TEST(TrainTest, LastIterateModeAlsoLearns) {
  const auto data = Separable(200, 5);
  Hyperparams hp;
  hp.average = false;
  const LinearModel model = train(data, hp);
  int correct = 0;
  for (const FeatureVector& x : data) correct += predict(model, x) == x.label;
  EXPECT_GE(correct, 196);
}

TEST(TrainTest, LossDecreasesWithSmallSteps) {
  const auto data = Separable(100, 6);
  Hyperparams hp;
  hp.eta0 = 0.01;
  hp.average = false;
  double previous = std::numeric_limits<double>::infinity();
  for (int epochs = 1; epochs <= 8; ++epochs) {
    hp.epochs = epochs;
    const double loss = training_loss(train(data, hp), data, hp.model_kind);
    EXPECT_LE(loss, previous + 1e-12) << "epochs " << epochs;
    previous = loss;
  }
}

TEST(TrainTest, BadDatasets) {
  Hyperparams hp;
  EXPECT_THROW(train({}, hp), ConfigError);
  const std::vector<FeatureVector> one_class = {Dense({1.0}, DirectionLabel::kOriginal),
                                                Dense({2.0}, DirectionLabel::kOriginal)};
  EXPECT_THROW(train(one_class, hp), ConfigError);
  const std::vector<FeatureVector> ragged = {Dense({1.0}, DirectionLabel::kOriginal),
                                             Dense({2.0, 1.0}, DirectionLabel::kTranslated)};
  EXPECT_THROW(train(ragged, hp), DataError);
}

TEST(PredictTest, TieIsOriginal) {
  LinearModel model;
  model.weights = Eigen::VectorXd::Zero(3);
  EXPECT_EQ(predict(model, Dense({1.0, 2.0, 3.0}, DirectionLabel::kOriginal)),
            DirectionLabel::kOriginal);
}

TEST(PredictTest, SignRule) {
  LinearModel model;
  model.weights = Eigen::VectorXd::Ones(1);
  EXPECT_EQ(predict(model, Dense({2.0}, DirectionLabel::kOriginal)),
            DirectionLabel::kTranslated);
  EXPECT_THROW(predict(model, Dense({2.0, 1.0}, DirectionLabel::kOriginal)), DataError);
}

TEST(PredictTest, AgreesWithDenseRecompute) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    LinearModel model;
    model.weights = Eigen::VectorXd::NullaryExpr(20, [&] { return normal(rng); });
    model.bias = normal(rng);
    std::vector<double> x(20, 0.0);
    for (int i = 0; i < 5; ++i) x[rng() % 20] = normal(rng);
    double dot = model.bias;
    for (int i = 0; i < 20; ++i) dot += model.weights[i] * x[i];
    const FeatureVector v = Dense(x, DirectionLabel::kOriginal);
    EXPECT_EQ(predict(model, v), dot > 0 ? DirectionLabel::kTranslated
                                         : DirectionLabel::kOriginal);
    // Scaling weights and bias by a positive constant keeps the decision.
    LinearModel scaled = model;
    scaled.weights *= 3.5;
    scaled.bias *= 3.5;
    EXPECT_EQ(predict(scaled, v), predict(model, v));
  }
}

TEST(AccuracyTest, Basics) {
  using L = DirectionLabel;
  const std::vector<L> gold = {L::kOriginal, L::kTranslated, L::kOriginal, L::kTranslated,
                               L::kOriginal, L::kTranslated, L::kOriginal, L::kTranslated,
                               L::kOriginal, L::kTranslated};
  EXPECT_DOUBLE_EQ(accuracy(gold, gold), 1.0);
  std::vector<L> half = gold;
  for (std::size_t i = 0; i < half.size(); i += 2) half[i] = L::kTranslated;
  EXPECT_DOUBLE_EQ(accuracy(half, gold), 0.5);
  EXPECT_THROW(accuracy(std::span(gold).first(3), gold), DataError);
  EXPECT_THROW(accuracy({}, {}), DataError);
}

std::vector<DirectionLabel> BalancedLabels(int per_class) {
  std::vector<DirectionLabel> labels(static_cast<std::size_t>(per_class),
                                     DirectionLabel::kOriginal);
  labels.resize(static_cast<std::size_t>(2 * per_class), DirectionLabel::kTranslated);
  return labels;
}

TEST(StratifiedFoldsTest, TenFoldsOfTen) {
  const auto labels = BalancedLabels(50);
  const std::vector<int> folds = stratified_folds(labels, 10, 1);
  for (int f = 0; f < 10; ++f) {
    int size = 0, translated = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (folds[i] != f) continue;
      ++size;
      translated += labels[i] == DirectionLabel::kTranslated;
    }
    EXPECT_EQ(size, 10);
    EXPECT_EQ(translated, 5);
  }
}

TEST(StratifiedFoldsTest, PartitionAndStratificationOnRandomInputs) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 9);
    const int o = k + static_cast<int>(rng() % 40), t = k + static_cast<int>(rng() % 40);
    std::vector<DirectionLabel> labels(static_cast<std::size_t>(o), DirectionLabel::kOriginal);
    labels.resize(static_cast<std::size_t>(o + t), DirectionLabel::kTranslated);
    std::shuffle(labels.begin(), labels.end(), rng);
    const std::vector<int> folds = stratified_folds(labels, k, trial);
    ASSERT_EQ(folds.size(), labels.size());
    std::vector<int> size(k), translated(k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      ASSERT_GE(folds[i], 0);
      ASSERT_LT(folds[i], k);
      ++size[folds[i]];
      translated[folds[i]] += labels[i] == DirectionLabel::kTranslated;
    }
    EXPECT_EQ(std::accumulate(size.begin(), size.end(), 0), o + t);
    for (int f = 0; f < k; ++f) {
      const double expected = static_cast<double>(size[f]) * t / (o + t);
      EXPECT_LE(std::abs(translated[f] - expected), 1.0) << "trial " << trial;
    }
    const auto [lo, hi] = std::minmax_element(size.begin(), size.end());
    EXPECT_LE(*hi - *lo, 1);
  }
}

TEST(StratifiedFoldsTest, Errors) {
  EXPECT_THROW(stratified_folds(BalancedLabels(5), 1, 0), ConfigError);
  EXPECT_THROW(stratified_folds(BalancedLabels(5), 6, 0), ConfigError);
}

TEST(CrossValidateTest, SeparableDataScoresHigh) {
  const auto data = Separable(200, 9);
  Hyperparams hp;
  const CvReport report = cross_validate(data, 10, hp);
  EXPECT_EQ(report.k, 10);
  EXPECT_EQ(report.per_fold_accuracy.size(), 10u);
  EXPECT_GE(report.mean, 0.95);
  EXPECT_EQ(report.size(), 200);
  const double mean = std::accumulate(report.per_fold_accuracy.begin(),
                                      report.per_fold_accuracy.end(), 0.0) / 10.0;
  EXPECT_NEAR(report.mean, mean, 1e-12);
}

TEST(CrossValidateTest, PermutedLabelsAreAtChance) {
  std::vector<double> means;
  for (int rep = 0; rep < 10; ++rep) {
    auto data = Separable(200, 100 + rep);
    std::vector<DirectionLabel> labels = BalancedLabels(100);
    std::mt19937 rng(rep);
    std::shuffle(labels.begin(), labels.end(), rng);
    for (std::size_t i = 0; i < data.size(); ++i) data[i].label = labels[i];
    Hyperparams hp;
    hp.seed = rep;
    means.push_back(cross_validate(data, 10, hp).mean);
  }
  std::nth_element(means.begin(), means.begin() + 5, means.end());
  EXPECT_GE(means[5], 0.40);
  EXPECT_LE(means[5], 0.60);
}

TEST(CrossValidateTest, ReportIsDeterministic) {
  const auto data = Separable(60, 4);
  Hyperparams hp;
  hp.seed = 77;
  const std::string a = cv_report_to_json(cross_validate(data, 5, hp));
  EXPECT_EQ(a, cv_report_to_json(cross_validate(data, 5, hp)));
  const CvReport back = cv_report_from_json(a);
  EXPECT_EQ(cv_report_to_json(back), a);
}

TEST(CrossValidateTest, FeaturizerSeesOnlyFoldIndices) {
  const auto data = Separable(40, 12);
  std::set<std::size_t> tested;
  Hyperparams hp;
  cross_validate(Labels(data), 4, hp,
                 [&](std::span<const std::size_t> train_idx,
                     std::span<const std::size_t> test_idx) {
                   std::set<std::size_t> train_set(train_idx.begin(), train_idx.end());
                   FoldData fold;
                   for (std::size_t i : test_idx) {
                     EXPECT_FALSE(train_set.contains(i));
                     EXPECT_TRUE(tested.insert(i).second);
                     fold.test.push_back(data[i]);
                   }
                   for (std::size_t i : train_idx) fold.train.push_back(data[i]);
                   return fold;
                 });
  EXPECT_EQ(tested.size(), data.size());
}

TEST(ModelJsonTest, RoundTrip) {
  const auto data = Separable(50, 3);
  Hyperparams hp;
  hp.model_kind = ModelKind::kLinearSvm;
  LinearModel model = train(data, hp);
  model.spec_hash = "abc";
  const LinearModel back = model_from_json(model_to_json(model, hp));
  EXPECT_EQ(back.weights, model.weights);
  EXPECT_EQ(back.bias, model.bias);
  EXPECT_EQ(back.spec_hash, "abc");
}

}  // namespace
}  // namespace transdir
