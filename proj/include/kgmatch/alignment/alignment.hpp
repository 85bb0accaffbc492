#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace kgmatch::align {

enum class Relation { kEquivalence };

std::string_view toString(Relation relation);
Relation parseRelation(std::string_view text);

struct CorrespondenceKey {
  std::string source;
  std::string target;
  Relation relation = Relation::kEquivalence;

  friend auto operator<=>(const CorrespondenceKey&,
                          const CorrespondenceKey&) = default;
  friend bool operator==(const CorrespondenceKey&,
                         const CorrespondenceKey&) = default;
};

// <source, target, relation, confidence> plus named feature values. The
// extensions never take part in identity.
struct Correspondence {
  std::string source;
  std::string target;
  Relation relation = Relation::kEquivalence;
  double confidence = 1.0;
  std::map<std::string, double> extensions;

  CorrespondenceKey key() const { return {source, target, relation}; }

  // Full value equality, extensions included.
  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

// Set of correspondences keyed by (source, target, relation), with source
// and target indexes. Iteration order is ascending by key.
class Alignment {
 public:
  using Map = std::map<CorrespondenceKey, Correspondence>;

  class const_iterator {
   public:
    using iterator_category = std::bidirectional_iterator_tag;
    using value_type = Correspondence;
    using difference_type = std::ptrdiff_t;
    using pointer = const Correspondence*;
    using reference = const Correspondence&;

    const_iterator() = default;
    explicit const_iterator(Map::const_iterator it) : it_(it) {}
    reference operator*() const { return it_->second; }
    pointer operator->() const { return &it_->second; }
    const_iterator& operator++() { ++it_; return *this; }
    const_iterator operator++(int) { auto copy = *this; ++it_; return copy; }
    const_iterator& operator--() { --it_; return *this; }
    const_iterator operator--(int) { auto copy = *this; --it_; return copy; }
    friend bool operator==(const const_iterator&, const const_iterator&) = default;

   private:
    Map::const_iterator it_;
  };

  Alignment() = default;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const_iterator begin() const { return const_iterator(entries_.begin()); }
  const_iterator end() const { return const_iterator(entries_.end()); }

  // Inserts, or merges into the existing entry with the same key: the
  // confidence becomes the maximum of both and the extension maps are
  // united, with the incoming values winning. Confidence must lie in [0,1]
  // and every extension value must be finite.
  void add(Correspondence correspondence);

  // add() with one extra feature value set on the correspondence.
  void addWithFeature(Correspondence correspondence, const std::string& key,
                      double value);

  // Sets one extension on an existing entry. Throws when absent.
  void setExtension(const CorrespondenceKey& key, const std::string& name,
                    double value);

  bool erase(const CorrespondenceKey& key);

  const Correspondence* find(const CorrespondenceKey& key) const;
  bool contains(const CorrespondenceKey& key) const { return find(key) != nullptr; }
  bool contains(std::string_view source, std::string_view target) const;

  bool hasSource(std::string_view source) const;
  bool hasTarget(std::string_view target) const;
  // Targets matched to `source`; empty set when none.
  const std::set<std::string>& targetsOf(std::string_view source) const;
  const std::set<std::string>& sourcesOf(std::string_view target) const;

  friend bool operator==(const Alignment& a, const Alignment& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Map entries_;
  std::map<std::string, std::set<std::string>, std::less<>> by_source_;
  std::map<std::string, std::set<std::string>, std::less<>> by_target_;
};

struct Split {
  Alignment sampled;
  Alignment rest;
};

// Draws exactly n correspondences uniformly at random; the remainder goes
// to `rest`. Throws when n > |alignment|.
Split sample(const Alignment& alignment, std::size_t n, std::uint64_t seed);

// sample() with n = round-half-up(fraction * |alignment|). The fraction must
// lie strictly between 0 and 1.
Split sampleByFraction(const Alignment& alignment, double fraction,
                       std::uint64_t seed);

}  // namespace kgmatch::align
