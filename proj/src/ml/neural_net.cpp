#include <cmath>
#include <numeric>

#include "kgmatch/ml/models.hpp"
#include "kgmatch/simd/kernels.hpp"
#include "kgmatch/util/error.hpp"

namespace kgmatch::ml {
namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -(y log p + (1-y) log(1-p)) with p = sigmoid(z), evaluated without
// forming p.
double crossEntropy(double z, std::uint8_t y) {
  const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - (y ? z : 0.0);
}

}  // namespace

NeuralNetClassifier::NeuralNetClassifier(std::vector<std::size_t> layer_sizes,
                                         std::uint64_t seed)
    : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2 || sizes_.back() != 1) {
    throw Error("neural net needs an input layer and a single output unit");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(total);
    total += sizes_[l + 1] * sizes_[l] + sizes_[l + 1];
  }
  params_.assign(total, 0.0);

  // He initialization for ReLU layers, Glorot-style for the output layer.
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const bool output = l + 2 == sizes_.size();
    const double scale = std::sqrt((output ? 1.0 : 2.0) / static_cast<double>(sizes_[l]));
    const std::size_t weights = sizes_[l + 1] * sizes_[l];
    for (std::size_t k = 0; k < weights; ++k) params_[offsets_[l] + k] = scale * rng.normal();
  }
}

double NeuralNetClassifier::forward(std::span<const double> x,
                                    std::vector<std::vector<double>>* z,
                                    std::vector<std::vector<double>>* a) const {
  std::vector<double> input(x.begin(), x.end());
  if (a) a->push_back(input);
  double output = 0.0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = &params_[offsets_[l]];
    const double* b = w + out * in;
    std::vector<double> pre(out);
    for (std::size_t o = 0; o < out; ++o) {
      pre[o] = b[o] + simd::dot(std::span<const double>(w + o * in, in),
                                std::span<const double>(input));
    }
    const bool last = l + 2 == sizes_.size();
    std::vector<double> act(out);
    for (std::size_t o = 0; o < out; ++o) act[o] = last ? pre[o] : std::max(0.0, pre[o]);
    if (z) z->push_back(pre);
    if (a) a->push_back(act);
    if (last) output = pre[0];
    input = std::move(act);
  }
  return output;
}

void NeuralNetClassifier::accumulateGradient(std::span<const double> x,
                                             std::uint8_t label,
                                             std::vector<double>& gradient,
                                             double weight) const {
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> a;
  const double logit = forward(x, &z, &a);
  std::vector<double> delta = {weight * (sigmoid(logit) - (label ? 1.0 : 0.0))};
  for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    double* gw = &gradient[offsets_[l]];
    double* gb = gw + out * in;
    const double* w = &params_[offsets_[l]];
    for (std::size_t o = 0; o < out; ++o) {
      simd::axpy(delta[o], std::span<const double>(a[l]), std::span<double>(gw + o * in, in));
      gb[o] += delta[o];
    }
    if (l == 0) break;
    std::vector<double> previous(in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      simd::axpy(delta[o], std::span<const double>(w + o * in, in), std::span<double>(previous));
    }
    for (std::size_t k = 0; k < in; ++k) {
      if (z[l - 1][k] <= 0.0) previous[k] = 0.0;
    }
    delta = std::move(previous);
  }
}

double NeuralNetClassifier::lossAndGradient(const Matrix& x,
                                            const std::vector<std::uint8_t>& y,
                                            std::vector<double>* gradient) const {
  if (gradient) gradient->assign(params_.size(), 0.0);
  const double weight = 1.0 / static_cast<double>(x.rows());
  double loss = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    loss += crossEntropy(forward(x.row(r), nullptr, nullptr), y[r]);
    if (gradient) accumulateGradient(x.row(r), y[r], *gradient, weight);
  }
  return loss * weight;
}

void NeuralNetClassifier::train(const Matrix& x, const std::vector<std::uint8_t>& y,
                                int epochs, double learning_rate, std::uint64_t seed) {
  const double initial = lossAndGradient(x, y, nullptr);
  Rng rng(seed);
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> gradient(params_.size());
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t r : order) {
      std::fill(gradient.begin(), gradient.end(), 0.0);
      accumulateGradient(x.row(r), y[r], gradient, 1.0);
      simd::axpy(-learning_rate, std::span<const double>(gradient), std::span<double>(params_));
    }
  }
  const double final_loss = lossAndGradient(x, y, nullptr);
  converged_ = std::isfinite(final_loss) && final_loss <= initial;
}

double NeuralNetClassifier::score(std::span<const double> x) const {
  return sigmoid(forward(x, nullptr, nullptr));
}

}  // namespace kgmatch::ml
