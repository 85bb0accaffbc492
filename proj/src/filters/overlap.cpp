#include <string>

#include "kgmatch/filters/filters.hpp"
#include "kgmatch/util/error.hpp"

namespace kgmatch::filters {

std::string_view toString(OverlapMode mode) {
  switch (mode) {
    case OverlapMode::kAbsolute: return "ABSOLUTE";
    case OverlapMode::kMin: return "MIN";
    case OverlapMode::kMax: return "MAX";
    case OverlapMode::kJaccard: return "JACCARD";
    case OverlapMode::kDice: return "DICE";
  }
  return "?";
}

OverlapMode parseOverlapMode(std::string_view name) {
  for (OverlapMode mode : kAllOverlapModes) {
    if (toString(mode) == name) return mode;
  }
  throw Error("unknown overlap mode '" + std::string(name) + "'");
}

LiteralComparison parseLiteralComparison(std::string_view name) {
  if (name == "NONE") return LiteralComparison::kNone;
  if (name == "EXACT") return LiteralComparison::kExact;
  if (name == "NORMALIZED") return LiteralComparison::kNormalized;
  throw Error("unknown literal comparison '" + std::string(name) + "'");
}

Tokenizer parseTokenizer(std::string_view name) {
  if (name == "WHITESPACE") return Tokenizer::kWhitespace;
  if (name == "WHITESPACE_LOWERCASE") return Tokenizer::kWhitespaceLowercase;
  throw Error("unknown tokenizer '" + std::string(name) + "'");
}

double overlapScore(std::size_t intersection, std::size_t size_a,
                    std::size_t size_b, OverlapMode mode) {
  const auto ratio = [](double numerator, double denominator) {
    return denominator == 0.0 ? 0.0 : numerator / denominator;
  };
  const double common = static_cast<double>(intersection);
  const double a = static_cast<double>(size_a);
  const double b = static_cast<double>(size_b);
  switch (mode) {
    case OverlapMode::kAbsolute:
      return common;
    case OverlapMode::kMin:
      return ratio(common, std::min(a, b));
    case OverlapMode::kMax:
      return ratio(common, std::max(a, b));
    case OverlapMode::kJaccard:
      return ratio(common, a + b - common);
    case OverlapMode::kDice:
      return ratio(2.0 * common, a + b);
  }
  return 0.0;
}

std::set<std::string> defaultExcludedProperties() {
  return {
      "http://www.w3.org/2000/01/rdf-schema#label",
      "http://www.w3.org/2000/01/rdf-schema#comment",
      "http://www.w3.org/2000/01/rdf-schema#seeAlso",
      "http://www.w3.org/2004/02/skos/core#prefLabel",
      "http://www.w3.org/2004/02/skos/core#altLabel",
      "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
  };
}

void FilterConfig::validate() const {
  if (!(level_discount > 0.0 && level_discount <= 1.0)) {
    throw Error("level discount must lie in (0, 1]");
  }
  if (hierarchy_depth_cap < 1) throw Error("hierarchy depth cap must be >= 1");
}

std::string neighboursKey(OverlapMode mode) {
  return "filter/neighbours/" + std::string(toString(mode));
}
std::string propertiesKey(OverlapMode mode) {
  return "filter/properties/" + std::string(toString(mode));
}
std::string hierarchyKey(OverlapMode mode) {
  return "filter/hierarchy/" + std::string(toString(mode));
}
std::string typeKey(OverlapMode mode) {
  return "filter/type/" + std::string(toString(mode));
}
std::string bagOfWordsKey(OverlapMode mode) {
  return "filter/bow/" + std::string(toString(mode));
}

std::size_t mappedIntersection(const std::set<std::string>& source,
                               const std::set<std::string>& target,
                               const align::Alignment& mapping) {
  std::size_t matched_sources = 0;
  std::set<std::string_view> hit_targets;
  for (const std::string& s : source) {
    bool matched = false;
    if (target.count(s) > 0) {
      hit_targets.insert(*target.find(s));
      matched = true;
    }
    for (const std::string& t : mapping.targetsOf(s)) {
      const auto it = target.find(t);
      if (it == target.end()) continue;
      hit_targets.insert(*it);
      matched = true;
    }
    if (matched) ++matched_sources;
  }
  return std::min(matched_sources, hit_targets.size());
}

}  // namespace kgmatch::filters
