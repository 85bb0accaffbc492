#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "kgmatch/rdf/graph.hpp"

namespace kgmatch::rdf {

struct NTriplesOptions {
  // Blank nodes become resources named skolemIri(blank_scope, label).
  std::string blank_scope = "doc";
};

// Line-oriented N-Triples. Malformed lines raise kgmatch::ParseError with
// the 1-based line number.
Graph parseNTriples(std::istream& in, const NTriplesOptions& options = {});
Graph parseNTriples(std::string_view text, const NTriplesOptions& options = {});
Graph loadNTriples(const std::string& path, const NTriplesOptions& options = {});

// Writes every triple in SPO order, one statement per line.
void writeNTriples(const Graph& graph, std::ostream& out);

}  // namespace kgmatch::rdf
