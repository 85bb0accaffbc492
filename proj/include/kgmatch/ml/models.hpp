#pragma once

// Concrete classifier families behind fitClassifier().

#include <cstdint>
#include <span>
#include <vector>

#include "kgmatch/ml/classifier.hpp"
#include "kgmatch/util/random.hpp"

namespace kgmatch::ml {

// CART tree over a fixed row set. Splits are axis-aligned with thresholds at
// the midpoint between adjacent distinct values; x <= threshold goes left.
class Tree {
 public:
  enum class Criterion { kGini, kSquaredError };

  struct Params {
    Criterion criterion = Criterion::kGini;
    int max_depth = 64;
    int min_leaf_size = 1;
    // Features drawn per split without replacement; 0 means all.
    std::size_t max_features = 0;
  };

  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };

  // `rows` may repeat indices (bootstrap samples). Leaves hold the mean of
  // `targets` over their rows; `rng` is only used when max_features > 0.
  static Tree fit(const Matrix& x, std::span<const double> targets,
                  std::vector<std::size_t> rows, const Params& params, Rng* rng);

  double predict(std::span<const double> x) const;
  // Index of the leaf reached by x.
  int leafOf(std::span<const double> x) const;

  std::vector<Node>& nodes() { return nodes_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

class DecisionTreeClassifier : public Classifier {
 public:
  DecisionTreeClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                         int max_depth, int min_leaf_size);
  double score(std::span<const double> x) const override;
  const Tree& tree() const { return tree_; }

 private:
  Tree tree_;
};

class RandomForestClassifier : public Classifier {
 public:
  RandomForestClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                         int num_trees, int min_leaf_size, std::uint64_t seed);
  double score(std::span<const double> x) const override;

 private:
  std::vector<Tree> trees_;
};

// Logistic-loss boosting with shrinkage 0.1 and Newton leaf values.
class GradientBoostedTreesClassifier : public Classifier {
 public:
  static constexpr double kShrinkage = 0.1;

  GradientBoostedTreesClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                                 int num_trees, int max_depth);
  double score(std::span<const double> x) const override;

 private:
  double base_ = 0.0;
  std::vector<Tree> trees_;
};

// Gaussian likelihood per feature and class.
class GaussianNaiveBayes : public Classifier {
 public:
  static constexpr double kVarianceFloor = 1e-9;

  GaussianNaiveBayes(const Matrix& x, const std::vector<std::uint8_t>& y);
  double score(std::span<const double> x) const override;
  double logOdds(std::span<const double> x) const;

 private:
  double log_prior_[2] = {0.0, 0.0};
  std::vector<double> mean_[2];
  std::vector<double> variance_[2];
};

// Soft-margin C-SVM with an RBF kernel, trained by SMO with maximal
// violating pair selection. Scores are Platt-scaled margins.
class SvmRbfClassifier : public Classifier {
 public:
  SvmRbfClassifier(const Matrix& x, const std::vector<std::uint8_t>& y, double c,
                   double gamma, const TrainingOptions& options);
  double score(std::span<const double> x) const override;
  double decisionValue(std::span<const double> x) const;
  bool converged() const { return converged_; }

 private:
  double gamma_;
  double rho_ = 0.0;
  Matrix support_;
  std::vector<double> coefficients_;  // alpha_i * y_i
  double platt_a_ = 0.0;
  double platt_b_ = 0.0;
  bool converged_ = true;
};

// Fully connected net: ReLU hidden layers, one sigmoid output, mean binary
// cross-entropy loss, per-row SGD.
class NeuralNetClassifier : public Classifier {
 public:
  // Layer sizes from input to output, e.g. {F, h1, 1}.
  NeuralNetClassifier(std::vector<std::size_t> layer_sizes, std::uint64_t seed);

  void train(const Matrix& x, const std::vector<std::uint8_t>& y, int epochs,
             double learning_rate, std::uint64_t seed);

  double score(std::span<const double> x) const override;

  // Mean cross-entropy over the rows; fills `gradient` (same layout as
  // parameters()) when non-null.
  double lossAndGradient(const Matrix& x, const std::vector<std::uint8_t>& y,
                         std::vector<double>* gradient) const;

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }
  bool converged() const { return converged_; }

 private:
  // Forward pass keeping pre-activations and activations of every layer.
  double forward(std::span<const double> x, std::vector<std::vector<double>>* z,
                 std::vector<std::vector<double>>* a) const;
  void accumulateGradient(std::span<const double> x, std::uint8_t label,
                          std::vector<double>& gradient, double weight) const;

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;  // start of W for each layer; b follows W
  std::vector<double> params_;
  bool converged_ = true;
};

class ConstantClassifier : public Classifier {
 public:
  explicit ConstantClassifier(double score) : score_(score) {}
  double score(std::span<const double>) const override { return score_; }

 private:
  double score_;
};

}  // namespace kgmatch::ml
