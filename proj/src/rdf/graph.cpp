#include "kgmatch/rdf/graph.hpp"

#include <algorithm>
#include <tuple>

#include "kgmatch/util/error.hpp"

namespace kgmatch::rdf {
namespace {

bool lessSpo(const Triple& a, const Triple& b) {
  return std::tie(a.subject, a.predicate, a.object) <
         std::tie(b.subject, b.predicate, b.object);
}
bool lessPos(const Triple& a, const Triple& b) {
  return std::tie(a.predicate, a.object, a.subject) <
         std::tie(b.predicate, b.object, b.subject);
}
bool lessOsp(const Triple& a, const Triple& b) {
  return std::tie(a.object, a.subject, a.predicate) <
         std::tie(b.object, b.subject, b.predicate);
}

std::string literalKey(const Literal& literal) {
  std::string key = literal.lexical;
  key += '\0';
  if (literal.language) key += "@" + *literal.language;
  key += '\0';
  if (literal.datatype) key += *literal.datatype;
  return key;
}

template <typename Less, typename Key>
std::span<const Triple> range(const std::vector<Triple>& sorted, Key key) {
  const auto lo = std::lower_bound(
      sorted.begin(), sorted.end(), key,
      [](const Triple& t, const auto& k) { return Less::key(t) < k; });
  const auto hi = std::upper_bound(
      lo, sorted.end(), key,
      [](const auto& k, const Triple& t) { return k < Less::key(t); });
  return {sorted.data() + (lo - sorted.begin()),
          static_cast<std::size_t>(hi - lo)};
}

struct SubjectKey {
  static TermId key(const Triple& t) { return t.subject; }
};
struct SubjectPredicateKey {
  static std::pair<TermId, TermId> key(const Triple& t) {
    return {t.subject, t.predicate};
  }
};
struct PredicateKey {
  static TermId key(const Triple& t) { return t.predicate; }
};
struct ObjectKey {
  static TermId key(const Triple& t) { return t.object; }
};

}  // namespace

std::string skolemIri(std::string_view scope, std::string_view label) {
  std::string iri = "urn:kgmatch:bnode:";
  iri += scope;
  iri += ':';
  iri += label;
  return iri;
}

std::optional<TermId> Graph::findResource(std::string_view iri) const {
  const auto it = resources_.find(std::string(iri));
  if (it == resources_.end()) return std::nullopt;
  return it->second;
}

std::span<const Triple> Graph::bySubject(TermId subject) const {
  return range<SubjectKey>(spo_, subject);
}

std::span<const Triple> Graph::bySubjectPredicate(TermId subject,
                                                  TermId predicate) const {
  return range<SubjectPredicateKey>(spo_, std::make_pair(subject, predicate));
}

std::span<const Triple> Graph::byPredicate(TermId predicate) const {
  return range<PredicateKey>(pos_, predicate);
}

std::span<const Triple> Graph::byObject(TermId object) const {
  return range<ObjectKey>(osp_, object);
}

TermId GraphBuilder::iri(std::string_view iri) {
  if (iri.empty()) throw Error("empty IRI");
  const auto [it, inserted] =
      resources_.try_emplace(std::string(iri), static_cast<TermId>(terms_.size()));
  if (inserted) {
    Term term;
    term.kind = TermKind::kIri;
    term.value = std::string(iri);
    terms_.push_back(std::move(term));
  }
  return it->second;
}

TermId GraphBuilder::blank(std::string_view label, std::string_view scope) {
  std::string name = skolemIri(scope, label);
  const auto [it, inserted] =
      resources_.try_emplace(name, static_cast<TermId>(terms_.size()));
  if (inserted) {
    Term term;
    term.kind = TermKind::kBlank;
    term.value = std::move(name);
    term.blank_label = std::string(label);
    terms_.push_back(std::move(term));
  }
  return it->second;
}

TermId GraphBuilder::literal(const Literal& literal) {
  if (literal.language && literal.datatype) {
    throw Error("literal carries both a language tag and a datatype");
  }
  const auto [it, inserted] = literals_.try_emplace(
      literalKey(literal), static_cast<TermId>(terms_.size()));
  if (inserted) {
    Term term;
    term.kind = TermKind::kLiteral;
    term.value = literal.lexical;
    term.language = literal.language;
    term.datatype = literal.datatype;
    terms_.push_back(std::move(term));
  }
  return it->second;
}

void GraphBuilder::add(TermId subject, TermId predicate, TermId object) {
  if (terms_.at(subject).isLiteral() || terms_.at(predicate).isLiteral()) {
    throw Error("subject and predicate must be resources");
  }
  if (object >= terms_.size()) throw Error("unknown object term");
  triples_.push_back({subject, predicate, object});
}

void GraphBuilder::add(std::string_view subject, std::string_view predicate,
                       std::string_view object_iri) {
  const TermId s = iri(subject);
  const TermId p = iri(predicate);
  add(s, p, iri(object_iri));
}

void GraphBuilder::add(std::string_view subject, std::string_view predicate,
                       const Literal& object) {
  const TermId s = iri(subject);
  const TermId p = iri(predicate);
  add(s, p, literal(object));
}

Graph GraphBuilder::build() && {
  Graph graph;
  std::sort(triples_.begin(), triples_.end(), lessSpo);
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  graph.spo_ = std::move(triples_);
  graph.pos_ = graph.spo_;
  std::sort(graph.pos_.begin(), graph.pos_.end(), lessPos);
  graph.osp_ = graph.spo_;
  std::sort(graph.osp_.begin(), graph.osp_.end(), lessOsp);
  for (const Triple& t : graph.spo_) {
    if (graph.subjects_.empty() || graph.subjects_.back() != t.subject) {
      graph.subjects_.push_back(t.subject);
    }
  }
  graph.terms_ = std::move(terms_);
  graph.resources_ = std::move(resources_);
  return graph;
}

std::vector<TermId> neighbours(const Graph& graph, TermId node,
                               Direction direction) {
  std::vector<TermId> result;
  if (direction != Direction::kIncoming) {
    for (const Triple& t : graph.bySubject(node)) {
      if (graph.term(t.object).isResource()) result.push_back(t.object);
    }
  }
  if (direction != Direction::kOutgoing) {
    for (const Triple& t : graph.byObject(node)) result.push_back(t.subject);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<TermId> neighbours(const Graph& graph, std::string_view node,
                               Direction direction) {
  const auto id = graph.findResource(node);
  if (!id) return {};
  return neighbours(graph, *id, direction);
}

std::vector<Literal> literalValues(const Graph& graph, std::string_view node,
                                   std::optional<std::string_view> property) {
  std::vector<Literal> result;
  const auto id = graph.findResource(node);
  if (!id) return result;
  std::span<const Triple> candidates;
  if (property) {
    const auto p = graph.findResource(*property);
    if (!p) return result;
    candidates = graph.bySubjectPredicate(*id, *p);
  } else {
    candidates = graph.bySubject(*id);
  }
  for (const Triple& t : candidates) {
    const Term& object = graph.term(t.object);
    if (object.isLiteral()) result.push_back(object.literal());
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<TermId> properties(const Graph& graph, TermId node) {
  std::vector<TermId> result;
  for (const Triple& t : graph.bySubject(node)) {
    if (result.empty() || result.back() != t.predicate) {
      result.push_back(t.predicate);
    }
  }
  return result;
}

std::vector<TermId> properties(const Graph& graph, std::string_view node) {
  const auto id = graph.findResource(node);
  if (!id) return {};
  return properties(graph, *id);
}

}  // namespace kgmatch::rdf
