#include <algorithm>
#include <cmath>
#include <limits>

#include "kgmatch/ml/models.hpp"
#include "kgmatch/simd/kernels.hpp"

namespace kgmatch::ml {
namespace {

constexpr double kTau = 1e-12;

// Platt's sigmoid fit of P(y=1|f) = 1 / (1 + exp(A f + B)), solved by
// Newton's method with backtracking (Lin, Lin and Weng's formulation).
void fitSigmoid(const std::vector<double>& decision,
                const std::vector<std::uint8_t>& y, double& a, double& b) {
  double prior1 = 0.0;
  for (std::uint8_t label : y) prior1 += label;
  const double prior0 = static_cast<double>(y.size()) - prior1;
  const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo_target = 1.0 / (prior0 + 2.0);
  std::vector<double> t(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] ? hi_target : lo_target;

  constexpr int kMaxIterations = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;

  a = 0.0;
  b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  const auto objective = [&](double aa, double bb) {
    double f = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double fApB = decision[i] * aa + bb;
      if (fApB >= 0) {
        f += t[i] * fApB + std::log1p(std::exp(-fApB));
      } else {
        f += (t[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
      }
    }
    return f;
  };
  double fval = objective(a, b);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double fApB = decision[i] * a + b;
      double p, q;
      if (fApB >= 0) {
        p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
        q = 1.0 / (1.0 + std::exp(-fApB));
      } else {
        p = 1.0 / (1.0 + std::exp(fApB));
        q = std::exp(fApB) / (1.0 + std::exp(fApB));
      }
      const double d2 = p * q;
      h11 += decision[i] * decision[i] * d2;
      h22 += d2;
      h21 += decision[i] * d2;
      const double d1 = t[i] - p;
      g1 += decision[i] * d1;
      g2 += d1;
    }
    if (std::fabs(g1) < kEps && std::fabs(g2) < kEps) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 0.0001 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
}

}  // namespace

SvmRbfClassifier::SvmRbfClassifier(const Matrix& x, const std::vector<std::uint8_t>& y,
                                   double c, double gamma,
                                   const TrainingOptions& options)
    : gamma_(gamma) {
  const std::size_t n = x.rows();
  std::vector<double> sign(n);
  for (std::size_t i = 0; i < n; ++i) sign[i] = y[i] ? 1.0 : -1.0;

  // Q_ij = y_i y_j K(x_i, x_j)
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = std::exp(-gamma * simd::squaredDistance(x.row(i), x.row(j)));
      q[i * n + j] = q[j * n + i] = sign[i] * sign[j] * k;
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const auto upper = [&](std::size_t t) { return alpha[t] >= c; };
  const auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  converged_ = false;
  for (int iter = 0; iter < options.svm_max_iterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -sign[t] * grad[t];
      const bool in_up = sign[t] > 0 ? !upper(t) : !lower(t);
      const bool in_low = sign[t] > 0 ? !lower(t) : !upper(t);
      if (in_up && v >= gmax) {
        gmax = v;
        i = t;
      }
      if (in_low && v <= gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i == n || j == n || gmax - gmin < options.svm_tolerance) {
      converged_ = true;
      break;
    }
    const double* qi = &q[i * n];
    const double* qj = &q[j * n];
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (sign[i] != sign[j]) {
      double quad = qi[i] + qj[j] + 2.0 * qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
      } else {
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
      }
      if (diff > 0) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
      } else {
        if (alpha[j] > c) { alpha[j] = c; alpha[i] = c + diff; }
      }
    } else {
      double quad = qi[i] + qj[j] - 2.0 * qi[j];
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
      } else {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
      }
      if (sum > c) {
        if (alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
      } else {
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    simd::axpy(di, std::span<const double>(qi, n), std::span<double>(grad));
    simd::axpy(dj, std::span<const double>(qj, n), std::span<double>(grad));
  }

  // Offset from free vectors, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  int free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = sign[t] * grad[t];
    if (upper(t)) {
      if (sign[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (sign[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  rho_ = free_count > 0 ? free_sum / free_count : (ub + lb) / 2.0;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0.0) continue;
    support_.appendRow(x.row(t));
    coefficients_.push_back(alpha[t] * sign[t]);
  }

  std::vector<double> decision(n);
  for (std::size_t t = 0; t < n; ++t) decision[t] = decisionValue(x.row(t));
  fitSigmoid(decision, y, platt_a_, platt_b_);
}

double SvmRbfClassifier::decisionValue(std::span<const double> x) const {
  double sum = -rho_;
  for (std::size_t s = 0; s < coefficients_.size(); ++s) {
    sum += coefficients_[s] * std::exp(-gamma_ * simd::squaredDistance(support_.row(s), x));
  }
  return sum;
}

double SvmRbfClassifier::score(std::span<const double> x) const {
  const double fApB = decisionValue(x) * platt_a_ + platt_b_;
  if (fApB >= 0) return std::exp(-fApB) / (1.0 + std::exp(-fApB));
  return 1.0 / (1.0 + std::exp(fApB));
}

}  // namespace kgmatch::ml
