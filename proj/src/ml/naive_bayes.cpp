#include <cmath>

#include "kgmatch/ml/models.hpp"

namespace kgmatch::ml {

GaussianNaiveBayes::GaussianNaiveBayes(const Matrix& x,
                                       const std::vector<std::uint8_t>& y) {
  const std::size_t d = x.cols();
  double count[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    mean_[c].assign(d, 0.0);
    variance_[c].assign(d, 0.0);
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = y[r] ? 1 : 0;
    count[c] += 1.0;
    const auto row = x.row(r);
    for (std::size_t j = 0; j < d; ++j) mean_[c][j] += row[j];
  }
  for (int c = 0; c < 2; ++c) {
    for (double& m : mean_[c]) m = count[c] > 0 ? m / count[c] : 0.0;
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = y[r] ? 1 : 0;
    const auto row = x.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - mean_[c][j];
      variance_[c][j] += diff * diff;
    }
  }
  const double total = count[0] + count[1];
  for (int c = 0; c < 2; ++c) {
    for (double& v : variance_[c]) {
      v = std::max(count[c] > 0 ? v / count[c] : 0.0, kVarianceFloor);
    }
    log_prior_[c] = count[c] > 0 ? std::log(count[c] / total) : -1e300;
  }
}

double GaussianNaiveBayes::logOdds(std::span<const double> x) const {
  double log_likelihood[2];
  for (int c = 0; c < 2; ++c) {
    double sum = log_prior_[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - mean_[c][j];
      sum -= 0.5 * std::log(2.0 * M_PI * variance_[c][j]) +
             diff * diff / (2.0 * variance_[c][j]);
    }
    log_likelihood[c] = sum;
  }
  return log_likelihood[1] - log_likelihood[0];
}

double GaussianNaiveBayes::score(std::span<const double> x) const {
  const double z = logOdds(x);
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace kgmatch::ml
