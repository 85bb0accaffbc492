#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/ml/classifier.hpp"

namespace kgmatch::ml {

struct GridOptions {
  // Decision-tree axes step by 4 and the random-forest / SVM axes keep every
  // other value; meant for quick runs.
  bool coarse = false;
  std::vector<Family> families = {Family::kDecisionTree, Family::kGradientBoostedTrees,
                                  Family::kRandomForest, Family::kNaiveBayes,
                                  Family::kSvmRbf,       Family::kNeuralNet};
};

// The searched model zoo. Every point appears twice, first unscaled then
// with min-max scaling.
std::vector<ClassifierSpec> defaultGrid(const GridOptions& options = {});

// Stratified k-fold assignment: fold index per row. Each class is shuffled
// with the seed and dealt round-robin, so every fold's class counts differ
// from the ideal share by less than one row.
std::vector<std::size_t> stratifiedFolds(const std::vector<std::uint8_t>& labels,
                                         std::size_t k, std::uint64_t seed);

// Positive-class F1 with 0/0 read as 0.
double f1Score(const std::vector<std::uint8_t>& truth,
               const std::vector<std::uint8_t>& predicted);

struct CvResult {
  ClassifierSpec spec;
  double mean_f1 = 0.0;
  std::vector<double> fold_f1;
  bool converged = true;
};

struct GridSearchResult {
  TrainedModel model;
  std::vector<CvResult> table;
  std::size_t selected = 0;
};

struct SearchOptions {
  TrainingOptions training;
  // Grid points evaluated concurrently; results do not depend on it.
  unsigned threads = 1;
};

// Scores every spec by mean positive-class F1 over stratified folds, keeps
// the first best one and retrains it on all rows.
GridSearchResult crossValidateGrid(const LabeledDataset& dataset,
                                   const std::vector<ClassifierSpec>& grid,
                                   std::size_t k, std::uint64_t seed,
                                   const SearchOptions& options = {});

// family, parameters, scaling, cv_f1, converged, selected
void writeModelSelectionCsv(std::ostream& out, const GridSearchResult& result);

struct SupervisedFilterResult {
  align::Alignment alignment;
  GridSearchResult search;
};

// Trains on the candidates touched by `positives`, then keeps every
// candidate the selected model labels positive, tagging it with ml/score.
SupervisedFilterResult supervisedMatchFilter(const align::Alignment& candidates,
                                             const align::Alignment& positives,
                                             const std::vector<std::string>& feature_keys,
                                             const std::vector<ClassifierSpec>& grid,
                                             std::size_t k, std::uint64_t seed,
                                             const SearchOptions& options = {});

}  // namespace kgmatch::ml
