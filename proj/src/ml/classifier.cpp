#include "kgmatch/ml/classifier.hpp"

#include <cmath>
#include <sstream>

#include "kgmatch/ml/models.hpp"
#include "kgmatch/util/error.hpp"
#include "kgmatch/util/text.hpp"

namespace kgmatch::ml {
namespace {

struct Range {
  const char* name;
  double lo;
  double hi;
  bool integral;
};

std::vector<Range> rangesFor(Family family) {
  switch (family) {
    case Family::kDecisionTree:
      return {{"max_depth", 1, 20, true}, {"min_leaf_size", 1, 20, true}};
    case Family::kGradientBoostedTrees:
      return {{"max_depth", 1, 21, true}, {"num_trees", 1, 101, true}};
    case Family::kRandomForest:
      return {{"min_leaf_size", 1, 10, true}, {"num_trees", 1, 100, true}};
    case Family::kNaiveBayes:
      return {};
    case Family::kSvmRbf:
      return {{"C", std::ldexp(1.0, -5), std::ldexp(1.0, 15), false},
              {"gamma", std::ldexp(1.0, -15), std::ldexp(1.0, 3), false}};
    case Family::kNeuralNet:
      return {{"topology", 0, 2, true}};
  }
  return {};
}

int intParam(const ClassifierSpec& spec, const std::string& name) {
  return static_cast<int>(spec.param(name));
}

}  // namespace

std::string_view toString(Family family) {
  switch (family) {
    case Family::kDecisionTree: return "DECISION_TREE";
    case Family::kGradientBoostedTrees: return "GRADIENT_BOOSTED_TREES";
    case Family::kRandomForest: return "RANDOM_FOREST";
    case Family::kNaiveBayes: return "NAIVE_BAYES";
    case Family::kSvmRbf: return "SVM_RBF";
    case Family::kNeuralNet: return "NEURAL_NET";
  }
  return "?";
}

Family parseFamily(std::string_view name) {
  for (Family f : {Family::kDecisionTree, Family::kGradientBoostedTrees,
                   Family::kRandomForest, Family::kNaiveBayes, Family::kSvmRbf,
                   Family::kNeuralNet}) {
    if (toString(f) == name) return f;
  }
  throw Error("unknown classifier family '" + std::string(name) + "'");
}

std::string_view toString(Scaling scaling) {
  return scaling == Scaling::kNone ? "NONE" : "MIN_MAX";
}

double ClassifierSpec::param(const std::string& name) const {
  const auto it = hyperparameters.find(name);
  if (it == hyperparameters.end()) {
    throw Error(std::string(toString(family)) + " requires hyperparameter '" + name + "'");
  }
  return it->second;
}

std::string ClassifierSpec::describeParameters() const {
  std::string out;
  for (const auto& [name, value] : hyperparameters) {
    if (!out.empty()) out += ';';
    out += name + "=" + formatDecimal(value);
  }
  return out;
}

void validateSpec(const ClassifierSpec& spec) {
  const auto ranges = rangesFor(spec.family);
  for (const Range& range : ranges) {
    const double value = spec.param(range.name);
    if (!(value >= range.lo && value <= range.hi) ||
        (range.integral && value != std::floor(value))) {
      throw Error(std::string(toString(spec.family)) + " hyperparameter " + range.name +
                  "=" + formatDecimal(value) + " is outside the searched grid");
    }
  }
  for (const auto& [name, value] : spec.hyperparameters) {
    bool known = false;
    for (const Range& range : ranges) known = known || name == range.name;
    if (!known) {
      throw Error(std::string(toString(spec.family)) + " has no hyperparameter '" + name + "'");
    }
  }
}

std::vector<std::size_t> hiddenLayers(int topology, std::size_t feature_count) {
  const std::size_t half = std::max<std::size_t>(1, feature_count / 2);
  const std::size_t root = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(feature_count))));
  switch (topology) {
    case 0: return {feature_count / 2 + 2};
    case 1: return {root};
    case 2: return {half, root};
  }
  throw Error("unknown neural net topology " + std::to_string(topology));
}

FitResult fitClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                        const ClassifierSpec& spec, std::uint64_t seed,
                        const TrainingOptions& options) {
  std::size_t positives = 0;
  for (std::uint8_t label : y) positives += label;
  if (positives == 0 || positives == y.size()) {
    return {std::make_shared<ConstantClassifier>(positives == 0 ? 0.0 : 1.0), true};
  }
  switch (spec.family) {
    case Family::kDecisionTree:
      return {std::make_shared<DecisionTreeClassifier>(
                  x, y, intParam(spec, "max_depth"), intParam(spec, "min_leaf_size")),
              true};
    case Family::kGradientBoostedTrees:
      return {std::make_shared<GradientBoostedTreesClassifier>(
                  x, y, intParam(spec, "num_trees"), intParam(spec, "max_depth")),
              true};
    case Family::kRandomForest:
      return {std::make_shared<RandomForestClassifier>(
                  x, y, intParam(spec, "num_trees"), intParam(spec, "min_leaf_size"), seed),
              true};
    case Family::kNaiveBayes:
      return {std::make_shared<GaussianNaiveBayes>(x, y), true};
    case Family::kSvmRbf: {
      auto svm = std::make_shared<SvmRbfClassifier>(x, y, spec.param("C"),
                                                    spec.param("gamma"), options);
      const bool converged = svm->converged();
      return {std::move(svm), converged};
    }
    case Family::kNeuralNet: {
      std::vector<std::size_t> sizes = {x.cols()};
      for (std::size_t h : hiddenLayers(intParam(spec, "topology"), x.cols())) {
        sizes.push_back(h);
      }
      sizes.push_back(1);
      auto net = std::make_shared<NeuralNetClassifier>(sizes, seed);
      net->train(x, y, options.nn_epochs, options.nn_learning_rate, mixSeed(seed, 1));
      const bool converged = net->converged();
      return {std::move(net), converged};
    }
  }
  throw Error("unhandled classifier family");
}

Prediction TrainedModel::predict(std::span<const double> vector) const {
  if (vector.size() != feature_count) {
    throw Error("model expects " + std::to_string(feature_count) + " features, got " +
                std::to_string(vector.size()));
  }
  double score;
  if (scaler) {
    const auto scaled = scaler->apply(vector);
    score = classifier->score(scaled);
  } else {
    score = classifier->score(vector);
  }
  if (!std::isfinite(score)) score = 0.0;
  score = std::clamp(score, 0.0, 1.0);
  return {score >= 0.5, score};
}

TrainedModel trainClassifier(const LabeledDataset& dataset, const ClassifierSpec& spec,
                             std::uint64_t seed, const TrainingOptions& options) {
  validateSpec(spec);
  if (dataset.positiveCount() == 0 || dataset.negativeCount() == 0) {
    throw Error("training requires both classes");
  }
  TrainedModel model;
  model.spec = spec;
  model.feature_count = dataset.featureCount();
  Matrix x = dataset.features();
  if (spec.scaling == Scaling::kMinMax) {
    model.scaler = MinMaxScaler::fit(x);
    x = model.scaler->apply(x);
  }
  FitResult fit = fitClassifier(x, dataset.labels(), spec, seed, options);
  model.classifier = std::move(fit.classifier);
  model.converged = fit.converged;
  return model;
}

}  // namespace kgmatch::ml
