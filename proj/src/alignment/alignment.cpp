#include "kgmatch/alignment/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kgmatch/util/error.hpp"
#include "kgmatch/util/random.hpp"

namespace kgmatch::align {
namespace {

const std::set<std::string>& emptySet() {
  static const std::set<std::string> kEmpty;
  return kEmpty;
}

void checkFinite(const std::string& name, double value) {
  if (!std::isfinite(value)) {
    throw Error("non-finite value for extension '" + name + "'");
  }
}

}  // namespace

std::string_view toString(Relation relation) {
  switch (relation) {
    case Relation::kEquivalence:
      return "=";
  }
  return "?";
}

Relation parseRelation(std::string_view text) {
  if (text == "=") return Relation::kEquivalence;
  throw Error("unsupported relation '" + std::string(text) + "'");
}

void Alignment::add(Correspondence correspondence) {
  if (!(correspondence.confidence >= 0.0 && correspondence.confidence <= 1.0)) {
    throw Error("confidence outside [0,1] for " + correspondence.source +
                " -> " + correspondence.target);
  }
  if (correspondence.source.empty() || correspondence.target.empty()) {
    throw Error("correspondence with empty entity");
  }
  for (const auto& [name, value] : correspondence.extensions) {
    checkFinite(name, value);
  }
  CorrespondenceKey key = correspondence.key();
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    Correspondence& existing = it->second;
    existing.confidence = std::max(existing.confidence, correspondence.confidence);
    for (auto& [name, value] : correspondence.extensions) {
      existing.extensions[name] = value;
    }
    return;
  }
  by_source_[key.source].insert(key.target);
  by_target_[key.target].insert(key.source);
  entries_.emplace(std::move(key), std::move(correspondence));
}

void Alignment::addWithFeature(Correspondence correspondence,
                               const std::string& key, double value) {
  checkFinite(key, value);
  correspondence.extensions[key] = value;
  add(std::move(correspondence));
}

void Alignment::setExtension(const CorrespondenceKey& key,
                             const std::string& name, double value) {
  checkFinite(name, value);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error("no correspondence " + key.source + " -> " + key.target);
  }
  it->second.extensions[name] = value;
}

bool Alignment::erase(const CorrespondenceKey& key) {
  if (entries_.erase(key) == 0) return false;
  const auto drop = [](auto& index, const std::string& from,
                       const std::string& to) {
    auto it = index.find(from);
    it->second.erase(to);
    if (it->second.empty()) index.erase(it);
  };
  drop(by_source_, key.source, key.target);
  drop(by_target_, key.target, key.source);
  return true;
}

const Correspondence* Alignment::find(const CorrespondenceKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Alignment::contains(std::string_view source, std::string_view target) const {
  const auto it = by_source_.find(source);
  return it != by_source_.end() && it->second.count(std::string(target)) > 0;
}

bool Alignment::hasSource(std::string_view source) const {
  return by_source_.find(source) != by_source_.end();
}

bool Alignment::hasTarget(std::string_view target) const {
  return by_target_.find(target) != by_target_.end();
}

const std::set<std::string>& Alignment::targetsOf(std::string_view source) const {
  const auto it = by_source_.find(source);
  return it == by_source_.end() ? emptySet() : it->second;
}

const std::set<std::string>& Alignment::sourcesOf(std::string_view target) const {
  const auto it = by_target_.find(target);
  return it == by_target_.end() ? emptySet() : it->second;
}

Split sample(const Alignment& alignment, std::size_t n, std::uint64_t seed) {
  if (n > alignment.size()) {
    throw Error("cannot sample " + std::to_string(n) + " of " +
                std::to_string(alignment.size()) + " correspondences");
  }
  std::vector<const Correspondence*> pool;
  pool.reserve(alignment.size());
  for (const Correspondence& c : alignment) pool.push_back(&c);

  // Partial Fisher-Yates: the first n slots end up as the sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  Split split;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (i < n ? split.sampled : split.rest).add(*pool[i]);
  }
  return split;
}

Split sampleByFraction(const Alignment& alignment, double fraction,
                       std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error("sampling fraction must lie in (0, 1)");
  }
  const double exact = fraction * static_cast<double>(alignment.size());
  const auto n = static_cast<std::size_t>(std::floor(exact + 0.5));
  return sample(alignment, std::min(n, alignment.size()), seed);
}

}  // namespace kgmatch::align
