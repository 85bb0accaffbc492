#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/rdf/graph.hpp"

namespace kgmatch::matchers {

inline constexpr std::string_view kRdfsLabel =
    "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kSkosAltLabel =
    "http://www.w3.org/2004/02/skos/core#altLabel";

inline constexpr std::string_view kExactKey = "base/exact";
inline constexpr std::string_view kNormalizedKey = "base/normalized";

// Unicode whitespace becomes a plain space, every other non-ASCII code point
// is dropped, ASCII letters are lowercased, and whitespace is trimmed and
// collapsed to single spaces.
std::string normalizeLabel(std::string_view label);

struct BaseMatcherOptions {
  std::vector<std::string> label_properties = {std::string(kRdfsLabel),
                                               std::string(kSkosAltLabel)};
  // Skolemized blank nodes are skipped unless set.
  bool include_blank_nodes = false;
};

// Emits <s, t, =, 1.0> for every pair of subjects that share a label value
// under any of the label properties, compared verbatim and after
// normalizeLabel(). Verbatim matches carry base/exact = 1; pairs that only
// match after normalization carry base/normalized = 1.
align::Alignment baseMatch(const rdf::Graph& source, const rdf::Graph& target,
                           const BaseMatcherOptions& options = {});

// Replays a fixed alignment.
inline align::Alignment forwardMatch(const align::Alignment& given) { return given; }

}  // namespace kgmatch::matchers
