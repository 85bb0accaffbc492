#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"

namespace kgmatch::ml {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void appendRow(std::span<const double> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Row {
  std::vector<double> features;
  bool positive = false;
  align::CorrespondenceKey key;
};

struct LabeledDataset {
  std::vector<std::string> feature_keys;
  std::vector<Row> rows;

  std::size_t featureCount() const { return feature_keys.size(); }
  std::size_t positiveCount() const;
  std::size_t negativeCount() const { return rows.size() - positiveCount(); }

  Matrix features() const;
  std::vector<std::uint8_t> labels() const;
};

inline constexpr std::string_view kScoreKey = "ml/score";

// Feature vector of a correspondence; absent extensions read as 0.
std::vector<double> featureVector(const align::Correspondence& correspondence,
                                  const std::vector<std::string>& feature_keys);

// Sorted union of extension keys, excluding ml/score.
std::vector<std::string> featureKeysOf(const align::Alignment& alignment);

// Keeps candidates whose source or target occurs in `positives`; a row is
// positive iff the exact pair is in `positives`. Throws when either class
// ends up empty.
LabeledDataset buildTrainingData(const align::Alignment& candidates,
                                 const align::Alignment& positives,
                                 const std::vector<std::string>& feature_keys);

// Per-feature min/max scaling into [0,1]. Constant features map to 0 and
// values outside the fitted range are clamped.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const Matrix& rows);

  std::vector<double> apply(std::span<const double> vector) const;
  Matrix apply(const Matrix& rows) const;

  const std::vector<double>& min() const { return min_; }
  const std::vector<double>& max() const { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace kgmatch::ml
