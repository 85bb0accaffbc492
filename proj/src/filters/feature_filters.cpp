#include <cmath>
#include <deque>

#include "kgmatch/filters/filters.hpp"
#include "kgmatch/matchers/matchers.hpp"

namespace kgmatch::filters {
namespace {

std::set<std::string> neighbourIris(const rdf::Graph& graph, std::string_view node,
                                    rdf::Direction direction) {
  std::set<std::string> iris;
  for (rdf::TermId id : rdf::neighbours(graph, node, direction)) {
    iris.emplace(graph.value(id));
  }
  return iris;
}

std::set<std::string> literalSet(const rdf::Graph& graph, std::string_view node,
                                 LiteralComparison comparison) {
  std::set<std::string> values;
  for (const rdf::Literal& literal : rdf::literalValues(graph, node)) {
    if (comparison == LiteralComparison::kNormalized) {
      std::string normal = matchers::normalizeLabel(literal.lexical);
      if (!normal.empty()) values.insert(std::move(normal));
    } else {
      values.insert(literal.lexical);
    }
  }
  return values;
}

std::set<std::string> propertyIris(const rdf::Graph& graph, std::string_view node,
                                   const std::set<std::string>& excluded) {
  std::set<std::string> iris;
  for (rdf::TermId id : rdf::properties(graph, node)) {
    std::string iri(graph.value(id));
    if (excluded.count(iri) == 0) iris.insert(std::move(iri));
  }
  return iris;
}

template <typename Score>
align::Alignment annotate(const align::Alignment& alignment, Score score) {
  align::Alignment out = alignment;
  for (const align::Correspondence& c : alignment) score(c, out);
  return out;
}

std::set<std::string> keysOf(const std::map<std::string, int>& levels) {
  std::set<std::string> keys;
  for (const auto& [iri, level] : levels) keys.insert(iri);
  return keys;
}

}  // namespace

align::Alignment similarNeighboursFilter(const align::Alignment& alignment,
                                         const rdf::Graph& source,
                                         const rdf::Graph& target,
                                         const FilterConfig& config) {
  const std::string key = neighboursKey(config.overlap_mode);
  return annotate(alignment, [&](const align::Correspondence& c,
                                 align::Alignment& out) {
    const auto ns = neighbourIris(source, c.source, config.neighbour_direction);
    const auto nt = neighbourIris(target, c.target, config.neighbour_direction);
    std::size_t common = mappedIntersection(ns, nt, alignment);
    std::size_t size_s = ns.size();
    std::size_t size_t_ = nt.size();
    if (config.literal_comparison != LiteralComparison::kNone) {
      const auto ls = literalSet(source, c.source, config.literal_comparison);
      const auto lt = literalSet(target, c.target, config.literal_comparison);
      std::size_t equal = 0;
      for (const std::string& v : ls) equal += lt.count(v);
      common += equal;
      size_s += equal;
      size_t_ += equal;
    }
    out.setExtension(c.key(), key,
                     overlapScore(common, size_s, size_t_, config.overlap_mode));
  });
}

align::Alignment commonPropertiesFilter(const align::Alignment& alignment,
                                        const rdf::Graph& source,
                                        const rdf::Graph& target,
                                        const FilterConfig& config) {
  const std::string key = propertiesKey(config.overlap_mode);
  return annotate(alignment, [&](const align::Correspondence& c,
                                 align::Alignment& out) {
    const auto ps = propertyIris(source, c.source, config.excluded_properties);
    const auto pt = propertyIris(target, c.target, config.excluded_properties);
    const std::size_t common = mappedIntersection(ps, pt, alignment);
    out.setExtension(c.key(), key,
                     overlapScore(common, ps.size(), pt.size(), config.overlap_mode));
  });
}

std::map<std::string, int> hierarchyAncestors(const rdf::Graph& graph,
                                              std::string_view node,
                                              const FilterConfig& config,
                                              int max_level) {
  std::map<std::string, int> levels;
  const auto start = graph.findResource(node);
  const auto link = graph.findResource(config.instance_to_hierarchy_property);
  if (!start || !link) return levels;
  const auto up = graph.findResource(config.hierarchy_property);

  std::vector<rdf::TermId> frontier;
  std::set<rdf::TermId> visited;
  for (const rdf::Triple& t : graph.bySubjectPredicate(*start, *link)) {
    if (graph.term(t.object).isResource() && visited.insert(t.object).second) {
      frontier.push_back(t.object);
    }
  }
  for (int level = 1; level <= max_level && !frontier.empty(); ++level) {
    std::vector<rdf::TermId> next;
    for (rdf::TermId id : frontier) {
      levels.emplace(std::string(graph.value(id)), level);
      if (!up) continue;
      for (const rdf::Triple& t : graph.bySubjectPredicate(id, *up)) {
        if (graph.term(t.object).isResource() && visited.insert(t.object).second) {
          next.push_back(t.object);
        }
      }
    }
    frontier = std::move(next);
  }
  return levels;
}

align::Alignment similarHierarchyFilter(const align::Alignment& alignment,
                                        const rdf::Graph& source,
                                        const rdf::Graph& target,
                                        const FilterConfig& config) {
  config.validate();
  const std::string count_key = hierarchyKey(config.overlap_mode);
  const std::string discounted_key(kHierarchyDiscountedKey);
  return annotate(alignment, [&](const align::Correspondence& c,
                                 align::Alignment& out) {
    const auto as = hierarchyAncestors(source, c.source, config,
                                       config.hierarchy_depth_cap);
    const auto at = hierarchyAncestors(target, c.target, config,
                                       config.hierarchy_depth_cap);
    double discounted = 0.0;
    for (const auto& [ancestor, k] : as) {
      int best = 0;
      const auto consider = [&](const std::string& image) {
        const auto it = at.find(image);
        if (it == at.end()) return;
        const int level = std::max(k, it->second);
        if (best == 0 || level < best) best = level;
      };
      consider(ancestor);
      for (const std::string& image : alignment.targetsOf(ancestor)) consider(image);
      if (best > 0) discounted += std::pow(config.level_discount, best - 1);
    }
    const auto ks = keysOf(as);
    const auto kt = keysOf(at);
    const std::size_t common = mappedIntersection(ks, kt, alignment);
    out.setExtension(c.key(), count_key,
                     overlapScore(common, ks.size(), kt.size(), config.overlap_mode));
    out.setExtension(c.key(), discounted_key, discounted);
  });
}

align::Alignment similarTypeFilter(const align::Alignment& alignment,
                                   const rdf::Graph& source,
                                   const rdf::Graph& target,
                                   const FilterConfig& config) {
  const std::string key = typeKey(config.overlap_mode);
  return annotate(alignment, [&](const align::Correspondence& c,
                                 align::Alignment& out) {
    const auto ks = keysOf(hierarchyAncestors(source, c.source, config, 1));
    const auto kt = keysOf(hierarchyAncestors(target, c.target, config, 1));
    const std::size_t common = mappedIntersection(ks, kt, alignment);
    out.setExtension(c.key(), key,
                     overlapScore(common, ks.size(), kt.size(), config.overlap_mode));
  });
}

std::set<std::string> tokenize(std::string_view text, Tokenizer tokenizer) {
  std::set<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) tokens.insert(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      flush();
      continue;
    }
    if (tokenizer == Tokenizer::kWhitespaceLowercase && c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
    current += c;
  }
  flush();
  return tokens;
}

align::Alignment bagOfWordsSetSimilarityFilter(const align::Alignment& alignment,
                                               const rdf::Graph& source,
                                               const rdf::Graph& target,
                                               const FilterConfig& config) {
  const std::string key = bagOfWordsKey(config.overlap_mode);
  std::optional<std::string_view> property;
  if (!config.literal_property.empty()) property = config.literal_property;
  const auto bag = [&](const rdf::Graph& graph, std::string_view node) {
    std::set<std::string> tokens;
    for (const rdf::Literal& literal : rdf::literalValues(graph, node, property)) {
      tokens.merge(tokenize(literal.lexical, config.tokenizer));
    }
    return tokens;
  };
  return annotate(alignment, [&](const align::Correspondence& c,
                                 align::Alignment& out) {
    out.setExtension(c.key(), key,
                     overlapScore(bag(source, c.source), bag(target, c.target),
                                  config.overlap_mode));
  });
}

align::Alignment thresholdFilter(const align::Alignment& alignment, double threshold) {
  align::Alignment out;
  for (const align::Correspondence& c : alignment) {
    if (c.confidence >= threshold) out.add(c);
  }
  return out;
}

align::Alignment naiveDescendingExtract(const align::Alignment& alignment) {
  std::vector<const align::Correspondence*> order;
  order.reserve(alignment.size());
  for (const align::Correspondence& c : alignment) order.push_back(&c);
  // Alignment iteration is already ascending by key, so a stable sort on
  // confidence alone yields the lexicographic tie-break.
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->confidence > b->confidence;
  });
  std::set<std::string_view> used_sources;
  std::set<std::string_view> used_targets;
  align::Alignment out;
  for (const align::Correspondence* c : order) {
    if (used_sources.count(c->source) > 0 || used_targets.count(c->target) > 0) {
      continue;
    }
    used_sources.insert(c->source);
    used_targets.insert(c->target);
    out.add(*c);
  }
  return out;
}

}  // namespace kgmatch::filters
