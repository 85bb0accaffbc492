#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgmatch/embed/embedding.hpp"
#include "kgmatch/simd/kernels.hpp"
#include "kgmatch/util/error.hpp"

namespace kgmatch::embed {
namespace {

// In-place lower Cholesky factor of a symmetric positive definite n x n
// matrix. Returns false when a pivot is not safely positive.
bool cholesky(std::vector<double>& a, std::size_t n) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(a[i * n + i]));
  const double floor = 1e-12 * std::max(max_diag, 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j] -
                  simd::dot(std::span<const double>(&a[j * n], j), std::span<const double>(&a[j * n], j));
    if (!(diag > floor)) return false;
    diag = std::sqrt(diag);
    a[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double s = a[i * n + j] - simd::dot(std::span<const double>(&a[i * n], j),
                                                std::span<const double>(&a[j * n], j));
      a[i * n + j] = s / diag;
    }
  }
  return true;
}

// Solves L L^T x = b for one right-hand side.
void choleskySolve(const std::vector<double>& l, std::size_t n, std::vector<double>& b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
}

std::vector<double> unitVector(std::span<const double> v) {
  const double norm = std::sqrt(simd::dot(v, v));
  std::vector<double> out(v.begin(), v.end());
  if (norm > 0) {
    for (double& x : out) x /= norm;
  }
  return out;
}

}  // namespace

std::vector<double> ProjectionMap::project(std::span<const float> x) const {
  if (x.size() != source_dims) throw Error("projection input has the wrong dimension");
  std::vector<double> out(target_dims, 0.0);
  for (std::size_t r = 0; r < source_dims; ++r) {
    simd::axpy(static_cast<double>(x[r]),
               std::span<const double>(matrix.data() + r * target_dims, target_dims),
               std::span<double>(out));
  }
  return out;
}

ProjectionMap trainProjection(const std::vector<std::pair<std::string, std::string>>& anchors,
                              const EmbeddingSpace& source, const EmbeddingSpace& target,
                              double ridge) {
  if (!(ridge >= 0.0)) throw Error("ridge must be >= 0");
  const std::size_t ds = source.dimensions();
  const std::size_t dt = target.dimensions();

  // Anchor vectors stored column-major: xt[k] is the k-th source coordinate
  // across all anchors.
  std::vector<std::vector<double>> xt(ds);
  std::vector<std::vector<double>> yt(dt);
  for (const auto& [s, t] : anchors) {
    const auto si = source.find(s);
    const auto ti = target.find(t);
    if (!si || !ti) continue;
    const auto sv = source.vector(*si);
    const auto tv = target.vector(*ti);
    for (std::size_t k = 0; k < ds; ++k) xt[k].push_back(sv[k]);
    for (std::size_t k = 0; k < dt; ++k) yt[k].push_back(tv[k]);
  }
  if (ds == 0 || xt[0].empty()) throw Error("no usable anchors for the projection");

  std::vector<double> gram(ds * ds);
  for (std::size_t i = 0; i < ds; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      gram[i * ds + j] = gram[j * ds + i] = simd::dot(std::span<const double>(xt[i]),
                                                      std::span<const double>(xt[j]));
    }
    gram[i * ds + i] += ridge;
  }
  if (!cholesky(gram, ds)) {
    throw Error("projection system is singular; use a ridge > 0");
  }

  ProjectionMap map;
  map.source_dims = ds;
  map.target_dims = dt;
  map.ridge = ridge;
  map.matrix.assign(ds * dt, 0.0);
  std::vector<double> rhs(ds);
  for (std::size_t c = 0; c < dt; ++c) {
    for (std::size_t r = 0; r < ds; ++r) {
      rhs[r] = simd::dot(std::span<const double>(xt[r]), std::span<const double>(yt[c]));
    }
    choleskySolve(gram, ds, rhs);
    for (std::size_t r = 0; r < ds; ++r) map.matrix[r * dt + c] = rhs[r];
  }
  return map;
}

align::Alignment projectionMatch(const EmbeddingSpace& source, const EmbeddingSpace& target,
                                 const ProjectionMap& map, double threshold) {
  if (map.source_dims != source.dimensions() || map.target_dims != target.dimensions()) {
    throw Error("projection does not fit the embedding spaces");
  }
  // Target node tokens in lexicographic order with unit vectors, so the
  // first maximum found is the lexicographically smallest.
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!target.isPredicate(i)) targets.push_back(i);
  }
  std::sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
    return target.tokens()[a] < target.tokens()[b];
  });
  const std::size_t dt = target.dimensions();
  std::vector<double> unit_targets(targets.size() * dt);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto v = target.vector(targets[k]);
    std::vector<double> as_double(v.begin(), v.end());
    const auto unit = unitVector(as_double);
    std::copy(unit.begin(), unit.end(), unit_targets.begin() + k * dt);
  }

  align::Alignment alignment;
  for (std::size_t s = 0; s < source.size(); ++s) {
    if (source.isPredicate(s)) continue;
    const auto projected = unitVector(map.project(source.vector(s)));
    double best = -2.0;
    std::size_t best_index = targets.size();
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double cosine = std::clamp(
          simd::dot(std::span<const double>(projected),
                    std::span<const double>(unit_targets.data() + k * dt, dt)),
          -1.0, 1.0);
      if (cosine > best) {
        best = cosine;
        best_index = k;
      }
    }
    if (best_index == targets.size() || !(best > threshold)) continue;
    alignment.add({source.tokens()[s], target.tokens()[targets[best_index]],
                   align::Relation::kEquivalence, std::max(0.0, best), {}});
  }
  return alignment;
}

}  // namespace kgmatch::embed
