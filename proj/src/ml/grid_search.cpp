#include "kgmatch/ml/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "kgmatch/util/error.hpp"
#include "kgmatch/util/random.hpp"
#include "kgmatch/util/text.hpp"

namespace kgmatch::ml {
namespace {

std::vector<double> steps(double first, double last, double step) {
  std::vector<double> values;
  for (double v = first; v <= last + 1e-9; v += step) values.push_back(v);
  return values;
}

std::vector<double> powersOfTwo(int first, int last, int step) {
  std::vector<double> values;
  for (int e = first; e <= last; e += step) values.push_back(std::ldexp(1.0, e));
  return values;
}

void addBothScalings(std::vector<ClassifierSpec>& grid, Family family,
                     std::map<std::string, double> params) {
  grid.push_back({family, params, Scaling::kNone});
  grid.push_back({family, std::move(params), Scaling::kMinMax});
}

struct FoldData {
  Matrix x;
  std::vector<std::uint8_t> y;
};

struct Fold {
  FoldData train;
  FoldData test;
};

bool hasBothClasses(const std::vector<std::uint8_t>& y) {
  const auto positives = std::count(y.begin(), y.end(), 1);
  return positives > 0 && static_cast<std::size_t>(positives) < y.size();
}

CvResult evaluateSpec(const ClassifierSpec& spec, const std::vector<Fold>& folds,
                      std::uint64_t seed, const TrainingOptions& options) {
  CvResult result;
  result.spec = spec;
  double sum = 0.0;
  for (const Fold& fold : folds) {
    Matrix train = fold.train.x;
    Matrix test = fold.test.x;
    if (spec.scaling == Scaling::kMinMax) {
      const MinMaxScaler scaler = MinMaxScaler::fit(train);
      train = scaler.apply(train);
      test = scaler.apply(test);
    }
    const FitResult fit = fitClassifier(train, fold.train.y, spec, seed, options);
    result.converged = result.converged && fit.converged;
    std::vector<std::uint8_t> predicted(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
      predicted[r] = fit.classifier->score(test.row(r)) >= 0.5 ? 1 : 0;
    }
    const double f1 = f1Score(fold.test.y, predicted);
    result.fold_f1.push_back(f1);
    sum += f1;
  }
  result.mean_f1 = sum / static_cast<double>(folds.size());
  return result;
}

}  // namespace

std::vector<ClassifierSpec> defaultGrid(const GridOptions& options) {
  std::vector<ClassifierSpec> grid;
  const auto wanted = [&](Family f) {
    return std::find(options.families.begin(), options.families.end(), f) !=
           options.families.end();
  };
  if (wanted(Family::kDecisionTree)) {
    const auto axis = options.coarse ? steps(1, 20, 4) : steps(1, 20, 1);
    for (double leaf : axis) {
      for (double depth : axis) {
        addBothScalings(grid, Family::kDecisionTree,
                        {{"min_leaf_size", leaf}, {"max_depth", depth}});
      }
    }
  }
  if (wanted(Family::kGradientBoostedTrees)) {
    for (double depth : {1.0, 6.0, 11.0, 16.0, 21.0}) {
      for (double trees : {1.0, 21.0, 41.0, 61.0, 81.0, 101.0}) {
        addBothScalings(grid, Family::kGradientBoostedTrees,
                        {{"max_depth", depth}, {"num_trees", trees}});
      }
    }
  }
  if (wanted(Family::kRandomForest)) {
    const auto trees = options.coarse ? steps(1, 91, 20) : steps(1, 91, 10);
    const auto leaves = options.coarse ? steps(1, 10, 3) : steps(1, 10, 1);
    for (double t : trees) {
      for (double leaf : leaves) {
        addBothScalings(grid, Family::kRandomForest,
                        {{"num_trees", t}, {"min_leaf_size", leaf}});
      }
    }
  }
  if (wanted(Family::kNaiveBayes)) addBothScalings(grid, Family::kNaiveBayes, {});
  if (wanted(Family::kSvmRbf)) {
    const int step = options.coarse ? 4 : 2;
    for (double c : powersOfTwo(-5, 15, step)) {
      for (double gamma : powersOfTwo(-15, 3, step)) {
        addBothScalings(grid, Family::kSvmRbf, {{"C", c}, {"gamma", gamma}});
      }
    }
  }
  if (wanted(Family::kNeuralNet)) {
    for (double topology : {0.0, 1.0, 2.0}) {
      addBothScalings(grid, Family::kNeuralNet, {{"topology", topology}});
    }
  }
  return grid;
}

std::vector<std::size_t> stratifiedFolds(const std::vector<std::uint8_t>& labels,
                                         std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? positives : negatives).push_back(i);
  }
  Rng rng(seed);
  rng.shuffle(positives);
  rng.shuffle(negatives);
  std::vector<std::size_t> fold(labels.size());
  std::size_t next = 0;
  for (std::size_t i : positives) fold[i] = next++ % k;
  for (std::size_t i : negatives) fold[i] = next++ % k;
  return fold;
}

double f1Score(const std::vector<std::uint8_t>& truth,
               const std::vector<std::uint8_t>& predicted) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] && truth[i]) ++tp;
    if (predicted[i] && !truth[i]) ++fp;
    if (!predicted[i] && truth[i]) ++fn;
  }
  const double denominator = 2 * tp + fp + fn;
  return denominator == 0 ? 0.0 : 2 * tp / denominator;
}

GridSearchResult crossValidateGrid(const LabeledDataset& dataset,
                                   const std::vector<ClassifierSpec>& grid,
                                   std::size_t k, std::uint64_t seed,
                                   const SearchOptions& options) {
  if (k < 2) throw Error("cross-validation needs at least 2 folds");
  if (dataset.rows.size() < k) {
    throw Error("cross-validation needs at least as many rows as folds");
  }
  if (dataset.positiveCount() == 0 || dataset.negativeCount() == 0) {
    throw Error("cross-validation requires both classes");
  }
  if (grid.empty()) throw Error("empty model grid");
  for (const ClassifierSpec& spec : grid) validateSpec(spec);

  const Matrix x = dataset.features();
  const std::vector<std::uint8_t> y = dataset.labels();
  const auto assignment = stratifiedFolds(y, k, mixSeed(seed, 0x5eed));
  std::vector<Fold> folds(k);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t f = 0; f < k; ++f) {
      FoldData& part = assignment[r] == f ? folds[f].test : folds[f].train;
      part.x.appendRow(x.row(r));
      part.y.push_back(y[r]);
    }
  }
  const bool usable = std::any_of(folds.begin(), folds.end(), [](const Fold& f) {
    return hasBothClasses(f.train.y) &&
           std::count(f.test.y.begin(), f.test.y.end(), 1) > 0;
  });
  if (!usable) throw Error("every cross-validation fold is degenerate");

  GridSearchResult result;
  result.table.resize(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      result.table[i] = evaluateSpec(grid[i], folds, mixSeed(seed, i + 1), options.training);
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 1; i < result.table.size(); ++i) {
    if (result.table[i].mean_f1 > result.table[result.selected].mean_f1) result.selected = i;
  }
  result.model = trainClassifier(dataset, grid[result.selected],
                                 mixSeed(seed, result.selected + 1), options.training);
  result.model.cv_f1 = result.table[result.selected].mean_f1;
  return result;
}

void writeModelSelectionCsv(std::ostream& out, const GridSearchResult& result) {
  writeCsvRow(out, {"family", "parameters", "scaling", "cv_f1", "converged", "selected"});
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const CvResult& row = result.table[i];
    writeCsvRow(out, {std::string(toString(row.spec.family)), row.spec.describeParameters(),
                      std::string(toString(row.spec.scaling)), formatDecimal(row.mean_f1),
                      row.converged ? "1" : "0", i == result.selected ? "1" : "0"});
  }
}

SupervisedFilterResult supervisedMatchFilter(const align::Alignment& candidates,
                                             const align::Alignment& positives,
                                             const std::vector<std::string>& feature_keys,
                                             const std::vector<ClassifierSpec>& grid,
                                             std::size_t k, std::uint64_t seed,
                                             const SearchOptions& options) {
  const LabeledDataset dataset = buildTrainingData(candidates, positives, feature_keys);
  SupervisedFilterResult result;
  result.search = crossValidateGrid(dataset, grid, k, seed, options);
  for (const align::Correspondence& c : candidates) {
    const Prediction p = result.search.model.predict(featureVector(c, feature_keys));
    if (!p.positive) continue;
    align::Correspondence kept = c;
    kept.extensions[std::string(kScoreKey)] = p.score;
    result.alignment.add(std::move(kept));
  }
  return result;
}

}  // namespace kgmatch::ml
