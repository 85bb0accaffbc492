#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/rdf/graph.hpp"

namespace kgmatch::filters {

enum class OverlapMode { kAbsolute, kMin, kMax, kJaccard, kDice };

inline constexpr OverlapMode kAllOverlapModes[] = {
    OverlapMode::kAbsolute, OverlapMode::kMin, OverlapMode::kMax,
    OverlapMode::kJaccard, OverlapMode::kDice};

std::string_view toString(OverlapMode mode);
OverlapMode parseOverlapMode(std::string_view name);

// Score from an intersection size and the two operand sizes. Relative modes
// return 0 when their denominator is 0.
double overlapScore(std::size_t intersection, std::size_t size_a,
                    std::size_t size_b, OverlapMode mode);

template <typename T>
double overlapScore(const std::set<T>& a, const std::set<T>& b, OverlapMode mode) {
  std::size_t common = 0;
  for (const T& x : a) common += b.count(x);
  return overlapScore(common, a.size(), b.size(), mode);
}

enum class LiteralComparison { kNone, kExact, kNormalized };
enum class Tokenizer { kWhitespace, kWhitespaceLowercase };

LiteralComparison parseLiteralComparison(std::string_view name);
Tokenizer parseTokenizer(std::string_view name);

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";

std::set<std::string> defaultExcludedProperties();

struct FilterConfig {
  OverlapMode overlap_mode = OverlapMode::kAbsolute;
  LiteralComparison literal_comparison = LiteralComparison::kNone;
  rdf::Direction neighbour_direction = rdf::Direction::kBoth;
  std::set<std::string> excluded_properties = defaultExcludedProperties();
  Tokenizer tokenizer = Tokenizer::kWhitespaceLowercase;
  // Literal property read by the bag-of-words filter; empty means all
  // literal-valued properties.
  std::string literal_property = "http://www.w3.org/2000/01/rdf-schema#label";
  std::string instance_to_hierarchy_property = std::string(kRdfType);
  std::string hierarchy_property = std::string(kRdfsSubClassOf);
  double level_discount = 0.5;
  int hierarchy_depth_cap = 10;

  // Throws kgmatch::Error on an out-of-range level_discount or depth cap.
  void validate() const;
};

std::string neighboursKey(OverlapMode mode);
std::string propertiesKey(OverlapMode mode);
std::string hierarchyKey(OverlapMode mode);
inline constexpr std::string_view kHierarchyDiscountedKey = "filter/hierarchy/discounted";
std::string typeKey(OverlapMode mode);
std::string bagOfWordsKey(OverlapMode mode);

// Number of elements shared by a source-side set and a target-side set when
// source elements are translated through `mapping` plus the identity on
// equal IRIs. Counted as min(#source elements with an image in `target`,
// #target elements hit by some source element), which equals the plain
// intersection size whenever the mapping is one-to-one.
std::size_t mappedIntersection(const std::set<std::string>& source,
                               const std::set<std::string>& target,
                               const align::Alignment& mapping);

// Every feature filter below returns a copy of `alignment` with one feature
// written into each correspondence's extensions. Membership never changes.

// Shared already-matched neighbours; with literal comparison enabled the
// number of equal literal values is added to the intersection and to both
// set sizes.
align::Alignment similarNeighboursFilter(const align::Alignment& alignment,
                                         const rdf::Graph& source,
                                         const rdf::Graph& target,
                                         const FilterConfig& config);

align::Alignment commonPropertiesFilter(const align::Alignment& alignment,
                                        const rdf::Graph& source,
                                        const rdf::Graph& target,
                                        const FilterConfig& config);

// Hierarchy ancestors with the level (1 = direct parent) at which each was
// first reached. Cycles are cut by the visited set.
std::map<std::string, int> hierarchyAncestors(const rdf::Graph& graph,
                                              std::string_view node,
                                              const FilterConfig& config,
                                              int max_level);

// Writes filter/hierarchy/<mode> (overlap of all ancestors) and
// filter/hierarchy/discounted, where each matched source ancestor contributes
// level_discount^(max(k, j) - 1) for its best match at source level k and
// target level j.
align::Alignment similarHierarchyFilter(const align::Alignment& alignment,
                                        const rdf::Graph& source,
                                        const rdf::Graph& target,
                                        const FilterConfig& config);

// Direct parents only.
align::Alignment similarTypeFilter(const align::Alignment& alignment,
                                   const rdf::Graph& source,
                                   const rdf::Graph& target,
                                   const FilterConfig& config);

std::set<std::string> tokenize(std::string_view text, Tokenizer tokenizer);

align::Alignment bagOfWordsSetSimilarityFilter(const align::Alignment& alignment,
                                               const rdf::Graph& source,
                                               const rdf::Graph& target,
                                               const FilterConfig& config);

// Keeps correspondences with confidence >= threshold.
align::Alignment thresholdFilter(const align::Alignment& alignment, double threshold);

// Greedy one-to-one selection by descending confidence; ties go to the
// lexicographically smaller (source, target).
align::Alignment naiveDescendingExtract(const align::Alignment& alignment);

}  // namespace kgmatch::filters
