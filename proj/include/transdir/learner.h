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

// Linear classifiers trained by stochastic gradient descent, and stratified
// k-fold cross-validation.
//
// Both learners minimize  loss(y (w.x + b)) + (lambda / 2) |w|^2  with
// y in {-1, +1} (TRANSLATED = +1), taking one example per step with step size
//
//   eta_t = eta0 / (1 + eta0 * lambda * t),   t = 0, 1, 2, ...
//
// The bias is not regularized.

#ifndef TRANSDIR_LEARNER_H_
#define TRANSDIR_LEARNER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "transdir/errors.h"
#include "transdir/features.h"
#include "transdir/language.h"

namespace transdir {

enum class ModelKind { kLogistic, kLinearSvm };

// "logistic" / "svm".
std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct Hyperparams {
  ModelKind model_kind = ModelKind::kLogistic;
  double l2_lambda = 1e-4;
  int epochs = 20;
  double eta0 = 0.1;
  std::uint64_t seed = 0;
  // Return the mean of all SGD iterates instead of the last one.
  bool average = true;

  // ConfigError unless lambda >= 0, epochs >= 1 and eta0 > 0.
  void validate() const;
};

template <typename Scalar>
struct BasicLinearModel {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector weights;
  Scalar bias = Scalar(0);
  std::string spec_hash;

  Eigen::Index dimension() const { return weights.size(); }
};

using LinearModel = BasicLinearModel<double>;

// w.x + b. DataError on a dimension mismatch.
template <typename Scalar>
Scalar decision_value(const BasicLinearModel<Scalar>& model,
                      const Eigen::SparseVector<Scalar>& x) {
  if (x.size() != model.dimension()) {
    throw DataError("feature dimension " + std::to_string(x.size()) +
                    " does not match model dimension " +
                    std::to_string(model.dimension()));
  }
  return x.dot(model.weights) + model.bias;
}

// TRANSLATED iff w.x + b > 0.
DirectionLabel predict(const LinearModel& model, const FeatureVector& x);

// SGD over `epochs` passes, reshuffled each pass from a stream derived from
// hp.seed. ConfigError if only one class is present; DataError if the
// dimensions disagree.
LinearModel train(std::span<const FeatureVector> dataset, const Hyperparams& hp);

// Mean unregularized loss of `model` on `dataset` under hp.model_kind.
double training_loss(const LinearModel& model,
                     std::span<const FeatureVector> dataset, ModelKind kind);

// Fraction of positions where the two label sequences agree. DataError if the
// lengths differ or are zero.
double accuracy(std::span<const DirectionLabel> predictions,
                std::span<const DirectionLabel> golds);

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct CvReport {
  int k = 0;
  std::vector<double> per_fold_accuracy;
  double mean = 0.0;
  // Population standard deviation of the fold accuracies.
  double std = 0.0;
  Confusion confusion;
  std::uint64_t seed = 0;

  std::int64_t size() const {
    return confusion.tp + confusion.fp + confusion.tn + confusion.fn;
  }
};

// Fold index in [0, k) for every example. Each class is shuffled and dealt
// round-robin, the second class continuing where the first stopped, so fold
// sizes differ by at most one and every fold's class counts are within one
// of the proportional share. ConfigError when k < 2 or a class has fewer
// than k members.
std::vector<int> stratified_folds(std::span<const DirectionLabel> labels, int k,
                                  std::uint64_t seed);

// Training and test vectors for one fold, built from the fold's example
// indices. Lets the caller refit vocabularies on the training part only.
struct FoldData {
  std::vector<FeatureVector> train;
  std::vector<FeatureVector> test;
};
using FoldFeaturizer = std::function<FoldData(
    std::span<const std::size_t> train_indices,
    std::span<const std::size_t> test_indices)>;

CvReport cross_validate(std::span<const DirectionLabel> labels, int k,
                        const Hyperparams& hp, const FoldFeaturizer& featurize);

// Cross-validation over fixed, precomputed vectors.
CvReport cross_validate(std::span<const FeatureVector> dataset, int k,
                        const Hyperparams& hp);

// Leakage-safe: the featurizer's spec is refit on every training fold.
CvReport cross_validate(const ChunkFeaturizer& featurizer, int k,
                        const Hyperparams& hp);

std::string cv_report_to_json(const CvReport& report);
CvReport cv_report_from_json(std::string_view text);

// JSON container with weights, bias, spec hash and hyperparameters.
std::string model_to_json(const LinearModel& model, const Hyperparams& hp);
LinearModel model_from_json(std::string_view text);

}  // namespace transdir

#endif  // TRANSDIR_LEARNER_H_
