#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgmatch/ml/dataset.hpp"

namespace kgmatch::ml {

enum class Family {
  kDecisionTree,
  kGradientBoostedTrees,
  kRandomForest,
  kNaiveBayes,
  kSvmRbf,
  kNeuralNet,
};

std::string_view toString(Family family);
Family parseFamily(std::string_view name);

enum class Scaling { kNone, kMinMax };
std::string_view toString(Scaling scaling);

// Hyperparameter names per family:
//   DECISION_TREE           min_leaf_size, max_depth
//   GRADIENT_BOOSTED_TREES  max_depth, num_trees
//   RANDOM_FOREST           num_trees, min_leaf_size
//   NAIVE_BAYES             (none)
//   SVM_RBF                 C, gamma
//   NEURAL_NET              topology (0: F/2+2, 1: sqrt(F), 2: F/2 then sqrt(F))
struct ClassifierSpec {
  Family family = Family::kDecisionTree;
  std::map<std::string, double> hyperparameters;
  Scaling scaling = Scaling::kNone;

  double param(const std::string& name) const;
  // "max_depth=3;min_leaf_size=1"
  std::string describeParameters() const;

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

// Throws kgmatch::Error when a family parameter is missing or outside the
// searched range.
void validateSpec(const ClassifierSpec& spec);

// Hidden layer sizes of a neural-net topology for F input features.
std::vector<std::size_t> hiddenLayers(int topology, std::size_t feature_count);

struct TrainingOptions {
  int nn_epochs = 200;
  double nn_learning_rate = 0.01;
  int svm_max_iterations = 100000;
  double svm_tolerance = 1e-3;
};

// Fitted decision function. score() is the positive-class probability.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double score(std::span<const double> x) const = 0;
};

struct FitResult {
  std::shared_ptr<const Classifier> classifier;
  bool converged = true;
};

// Trains one family on an unscaled matrix. A single-class label vector
// yields a constant classifier.
FitResult fitClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                        const ClassifierSpec& spec, std::uint64_t seed,
                        const TrainingOptions& options);

struct Prediction {
  bool positive = false;
  double score = 0.0;
};

struct TrainedModel {
  ClassifierSpec spec;
  std::size_t feature_count = 0;
  std::optional<MinMaxScaler> scaler;
  std::shared_ptr<const Classifier> classifier;
  double cv_f1 = 0.0;
  // False when an iterative solver hit its budget.
  bool converged = true;

  // Label is positive iff score >= 0.5.
  Prediction predict(std::span<const double> vector) const;
};

// Requires both classes in the dataset.
TrainedModel trainClassifier(const LabeledDataset& dataset,
                             const ClassifierSpec& spec, std::uint64_t seed,
                             const TrainingOptions& options = {});

}  // namespace kgmatch::ml
