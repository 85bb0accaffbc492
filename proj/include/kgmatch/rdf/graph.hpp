#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgmatch::rdf {

using TermId = std::uint32_t;

enum class TermKind : std::uint8_t { kIri, kBlank, kLiteral };

// A literal value. Language tag and datatype are mutually exclusive; the
// datatype is kept verbatim and never interpreted.
struct Literal {
  std::string lexical;
  std::optional<std::string> language;
  std::optional<std::string> datatype;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// One interned term. Resources (IRIs and skolemized blank nodes) carry their
// IRI in `value`; literals carry the lexical form there.
struct Term {
  TermKind kind = TermKind::kIri;
  std::string value;
  std::optional<std::string> language;
  std::optional<std::string> datatype;
  // Original label of a blank node, used when writing N-Triples.
  std::string blank_label;

  bool isResource() const { return kind != TermKind::kLiteral; }
  bool isLiteral() const { return kind == TermKind::kLiteral; }
  Literal literal() const { return {value, language, datatype}; }
};

struct Triple {
  TermId subject;
  TermId predicate;
  TermId object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Direction { kOutgoing, kIncoming, kBoth };

class GraphBuilder;

// Immutable in-memory triple store. Triples are kept deduplicated in three
// sort orders (SPO, POS, OSP) so that every index lookup is a contiguous
// range. Safe for concurrent readers.
class Graph {
 public:
  Graph() = default;

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  const Term& term(TermId id) const { return terms_.at(id); }
  std::string_view value(TermId id) const { return terms_.at(id).value; }

  std::optional<TermId> findResource(std::string_view iri) const;

  // Triples in SPO order.
  std::span<const Triple> triples() const { return spo_; }

  std::span<const Triple> bySubject(TermId subject) const;
  std::span<const Triple> bySubjectPredicate(TermId subject,
                                             TermId predicate) const;
  // POS order, i.e. grouped by predicate then object.
  std::span<const Triple> byPredicate(TermId predicate) const;
  // OSP order.
  std::span<const Triple> byObject(TermId object) const;

  // Distinct subjects, ascending by id.
  std::span<const TermId> subjects() const { return subjects_; }

 private:
  friend class GraphBuilder;

  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> resources_;
  std::vector<Triple> spo_;
  std::vector<Triple> pos_;
  std::vector<Triple> osp_;
  std::vector<TermId> subjects_;
};

// Interns terms and collects triples; build() sorts and indexes them.
class GraphBuilder {
 public:
  TermId iri(std::string_view iri);
  // Skolemizes a blank node label into a resource with a synthetic IRI
  // scoped to `scope`.
  TermId blank(std::string_view label, std::string_view scope);
  TermId literal(const Literal& literal);

  void add(TermId subject, TermId predicate, TermId object);
  void add(std::string_view subject, std::string_view predicate,
           std::string_view object_iri);
  void add(std::string_view subject, std::string_view predicate,
           const Literal& object);

  Graph build() &&;

 private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> resources_;
  std::unordered_map<std::string, TermId> literals_;
  std::vector<Triple> triples_;
};

std::string skolemIri(std::string_view scope, std::string_view label);

// Resources adjacent to `node`. Literals never appear. Sorted, unique.
std::vector<TermId> neighbours(const Graph& graph, TermId node,
                               Direction direction);
std::vector<TermId> neighbours(const Graph& graph, std::string_view node,
                               Direction direction);

// Literal objects of `node`, optionally restricted to one predicate, sorted
// by lexical form.
std::vector<Literal> literalValues(
    const Graph& graph, std::string_view node,
    std::optional<std::string_view> property = std::nullopt);

// Predicates used on triples whose subject is `node`. Sorted, unique.
std::vector<TermId> properties(const Graph& graph, TermId node);
std::vector<TermId> properties(const Graph& graph, std::string_view node);

}  // namespace kgmatch::rdf
