#include "kgmatch/ml/dataset.hpp"

#include <algorithm>
#include <set>

#include "kgmatch/util/error.hpp"

namespace kgmatch::ml {

void Matrix::appendRow(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw Error("row length does not match matrix width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::size_t LabeledDataset::positiveCount() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.positive; }));
}

Matrix LabeledDataset::features() const {
  Matrix m(rows.size(), feature_keys.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].features.begin(), rows[i].features.end(), m.row(i).begin());
  }
  return m;
}

std::vector<std::uint8_t> LabeledDataset::labels() const {
  std::vector<std::uint8_t> y;
  y.reserve(rows.size());
  for (const Row& r : rows) y.push_back(r.positive ? 1 : 0);
  return y;
}

std::vector<double> featureVector(const align::Correspondence& correspondence,
                                  const std::vector<std::string>& feature_keys) {
  std::vector<double> values;
  values.reserve(feature_keys.size());
  for (const std::string& key : feature_keys) {
    const auto it = correspondence.extensions.find(key);
    values.push_back(it == correspondence.extensions.end() ? 0.0 : it->second);
  }
  return values;
}

std::vector<std::string> featureKeysOf(const align::Alignment& alignment) {
  std::set<std::string> keys;
  for (const align::Correspondence& c : alignment) {
    for (const auto& [key, value] : c.extensions) {
      if (key != kScoreKey) keys.insert(key);
    }
  }
  return {keys.begin(), keys.end()};
}

LabeledDataset buildTrainingData(const align::Alignment& candidates,
                                 const align::Alignment& positives,
                                 const std::vector<std::string>& feature_keys) {
  LabeledDataset dataset;
  dataset.feature_keys = feature_keys;
  for (const align::Correspondence& c : candidates) {
    if (!positives.hasSource(c.source) && !positives.hasTarget(c.target)) continue;
    dataset.rows.push_back(
        {featureVector(c, feature_keys), positives.contains(c.key()), c.key()});
  }
  if (dataset.positiveCount() == 0 || dataset.negativeCount() == 0) {
    throw Error("degenerate training set: " + std::to_string(dataset.positiveCount()) +
                " positive and " + std::to_string(dataset.negativeCount()) +
                " negative rows");
  }
  return dataset;
}

MinMaxScaler MinMaxScaler::fit(const Matrix& rows) {
  if (rows.rows() == 0) throw Error("cannot fit a scaler on zero rows");
  MinMaxScaler scaler;
  scaler.min_.assign(rows.row(0).begin(), rows.row(0).end());
  scaler.max_ = scaler.min_;
  for (std::size_t r = 1; r < rows.rows(); ++r) {
    const auto row = rows.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      scaler.min_[j] = std::min(scaler.min_[j], row[j]);
      scaler.max_[j] = std::max(scaler.max_[j], row[j]);
    }
  }
  return scaler;
}

std::vector<double> MinMaxScaler::apply(std::span<const double> vector) const {
  if (vector.size() != min_.size()) {
    throw Error("scaler expects " + std::to_string(min_.size()) + " features, got " +
                std::to_string(vector.size()));
  }
  std::vector<double> out(vector.size());
  for (std::size_t j = 0; j < vector.size(); ++j) {
    const double range = max_[j] - min_[j];
    if (range <= 0.0) {
      out[j] = 0.0;
      continue;
    }
    out[j] = std::clamp((vector[j] - min_[j]) / range, 0.0, 1.0);
  }
  return out;
}

Matrix MinMaxScaler::apply(const Matrix& rows) const {
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto scaled = apply(rows.row(r));
    std::copy(scaled.begin(), scaled.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace kgmatch::ml
