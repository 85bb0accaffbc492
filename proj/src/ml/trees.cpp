#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgmatch/ml/models.hpp"

namespace kgmatch::ml {
namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
  std::size_t left_count = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const double> targets,
              const Tree::Params& params, Rng* rng, std::vector<Tree::Node>& nodes)
      : x_(x), targets_(targets), params_(params), rng_(rng), nodes_(nodes) {}

  int build(std::vector<std::size_t>& rows, int depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t r : rows) {
      sum += targets_[r];
      sum_sq += targets_[r] * targets_[r];
    }
    const double n = static_cast<double>(rows.size());
    nodes_[index].value = sum / n;

    const double parent = impurity(sum, sum_sq, n);
    if (depth >= params_.max_depth || parent <= 0.0 ||
        rows.size() < 2 * static_cast<std::size_t>(params_.min_leaf_size)) {
      return index;
    }
    const Split split = bestSplit(rows, parent);
    if (split.feature < 0) return index;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (x_(r, split.feature) <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    nodes_[index].feature = split.feature;
    nodes_[index].threshold = split.threshold;
    const int l = build(left, depth + 1);
    const int r = build(right, depth + 1);
    nodes_[index].left = l;
    nodes_[index].right = r;
    return index;
  }

 private:
  // Size-weighted impurity of a node: Gini n*2p(1-p) or the sum of squared
  // errors. Both are additive over children, so a split's quality is the
  // sum over its two sides.
  double impurity(double sum, double sum_sq, double n) const {
    if (n <= 0.0) return 0.0;
    if (params_.criterion == Tree::Criterion::kGini) {
      const double p = sum / n;
      return n * 2.0 * p * (1.0 - p);
    }
    return std::max(0.0, sum_sq - sum * sum / n);
  }

  std::vector<std::size_t> candidateFeatures() {
    std::vector<std::size_t> features(x_.cols());
    std::iota(features.begin(), features.end(), 0);
    if (params_.max_features == 0 || params_.max_features >= features.size() ||
        rng_ == nullptr) {
      return features;
    }
    for (std::size_t i = 0; i < params_.max_features; ++i) {
      const std::size_t j = i + rng_->below(features.size() - i);
      std::swap(features[i], features[j]);
    }
    features.resize(params_.max_features);
    std::sort(features.begin(), features.end());
    return features;
  }

  Split bestSplit(const std::vector<std::size_t>& rows, double parent) {
    Split best;
    best.impurity = parent - 1e-12 * std::max(1.0, parent);
    const std::size_t n = rows.size();
    const auto min_leaf = static_cast<std::size_t>(params_.min_leaf_size);
    std::vector<std::size_t> order(n);
    for (std::size_t f : candidateFeatures()) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x_(rows[a], f) < x_(rows[b], f);
      });
      double total = 0.0;
      double total_sq = 0.0;
      for (std::size_t i : order) {
        const double t = targets_[rows[i]];
        total += t;
        total_sq += t * t;
      }
      double left = 0.0;
      double left_sq = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = targets_[rows[order[i]]];
        left += t;
        left_sq += t * t;
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double lo = x_(rows[order[i]], f);
        const double hi = x_(rows[order[i + 1]], f);
        if (!(lo < hi)) continue;
        const double quality =
            impurity(left, left_sq, static_cast<double>(nl)) +
            impurity(total - left, total_sq - left_sq, static_cast<double>(nr));
        if (quality < best.impurity) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<int>(f), threshold, quality, nl};
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const double> targets_;
  const Tree::Params& params_;
  Rng* rng_;
  std::vector<Tree::Node>& nodes_;
};

std::vector<double> asTargets(const std::vector<std::uint8_t>& y) {
  return {y.begin(), y.end()};
}

std::vector<std::size_t> allRows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

Tree Tree::fit(const Matrix& x, std::span<const double> targets,
               std::vector<std::size_t> rows, const Params& params, Rng* rng) {
  Tree tree;
  if (rows.empty()) {
    tree.nodes_.emplace_back();
    return tree;
  }
  TreeBuilder builder(x, targets, params, rng, tree.nodes_);
  builder.build(rows, 0);
  return tree;
}

int Tree::leafOf(std::span<const double> x) const {
  int index = 0;
  while (nodes_[index].feature >= 0) {
    const Node& node = nodes_[index];
    index = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return index;
}

double Tree::predict(std::span<const double> x) const {
  return nodes_[leafOf(x)].value;
}

DecisionTreeClassifier::DecisionTreeClassifier(const Matrix& x,
                                               const std::vector<std::uint8_t>& y,
                                               int max_depth, int min_leaf_size) {
  const auto targets = asTargets(y);
  Tree::Params params;
  params.criterion = Tree::Criterion::kGini;
  params.max_depth = max_depth;
  params.min_leaf_size = min_leaf_size;
  tree_ = Tree::fit(x, targets, allRows(x.rows()), params, nullptr);
}

double DecisionTreeClassifier::score(std::span<const double> x) const {
  return tree_.predict(x);
}

RandomForestClassifier::RandomForestClassifier(const Matrix& x,
                                               const std::vector<std::uint8_t>& y,
                                               int num_trees, int min_leaf_size,
                                               std::uint64_t seed) {
  const auto targets = asTargets(y);
  Tree::Params params;
  params.criterion = Tree::Criterion::kGini;
  params.min_leaf_size = min_leaf_size;
  params.max_features = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols()))));
  const std::size_t n = x.rows();
  for (int t = 0; t < num_trees; ++t) {
    Rng rng(mixSeed(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> rows(n);
    for (std::size_t& r : rows) r = rng.below(n);
    trees_.push_back(Tree::fit(x, targets, std::move(rows), params, &rng));
  }
}

double RandomForestClassifier::score(std::span<const double> x) const {
  double sum = 0.0;
  for (const Tree& tree : trees_) sum += tree.predict(x);
  return trees_.empty() ? 0.0 : sum / static_cast<double>(trees_.size());
}

GradientBoostedTreesClassifier::GradientBoostedTreesClassifier(
    const Matrix& x, const std::vector<std::uint8_t>& y, int num_trees, int max_depth) {
  const std::size_t n = x.rows();
  double positives = 0.0;
  for (std::uint8_t label : y) positives += label;
  const double prior = std::clamp(positives / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
  base_ = std::log(prior / (1.0 - prior));

  std::vector<double> raw(n, base_);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);
  Tree::Params params;
  params.criterion = Tree::Criterion::kSquaredError;
  params.max_depth = max_depth;
  params.min_leaf_size = 1;
  for (int t = 0; t < num_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(raw[i]);
      residual[i] = y[i] - p;
      hessian[i] = p * (1.0 - p);
    }
    Tree tree = Tree::fit(x, residual, allRows(n), params, nullptr);

    // Newton step per leaf: sum of residuals over sum of hessians.
    auto& nodes = tree.nodes();
    std::vector<double> numerator(nodes.size(), 0.0);
    std::vector<double> denominator(nodes.size(), 0.0);
    std::vector<int> leaf(n);
    for (std::size_t i = 0; i < n; ++i) {
      leaf[i] = tree.leafOf(x.row(i));
      numerator[leaf[i]] += residual[i];
      denominator[leaf[i]] += hessian[i];
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k].feature >= 0) continue;
      const double step = denominator[k] < 1e-150 ? 0.0 : numerator[k] / denominator[k];
      nodes[k].value = kShrinkage * step;
    }
    for (std::size_t i = 0; i < n; ++i) raw[i] += nodes[leaf[i]].value;
    trees_.push_back(std::move(tree));
  }
}

double GradientBoostedTreesClassifier::score(std::span<const double> x) const {
  double raw = base_;
  for (const Tree& tree : trees_) raw += tree.predict(x);
  return sigmoid(raw);
}

}  // namespace kgmatch::ml
