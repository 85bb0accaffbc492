#pragma once

#include <string>
#include <string_view>

#include "kgmatch/alignment/alignment.hpp"

namespace kgmatch::align {

// Alignment-format XML. Each correspondence is written as
//
//   <map><Cell>
//     <entity1 rdf:resource="..."/>
//     <entity2 rdf:resource="..."/>
//     <relation>=</relation>
//     <measure>0.9</measure>
//     <ext key="filter/neighbours/JACCARD">0.5</ext>
//   </Cell></map>
//
// inside a root <Alignment>. Decimals carry at most 10 significant digits.
std::string serializeAlignmentXml(const Alignment& alignment);

// Accepts the layout above, optionally wrapped in rdf:RDF, and both
// rdf:resource and plain resource attributes. Errors name the 1-based Cell
// ordinal.
Alignment parseAlignmentXml(std::string_view text);

Alignment loadAlignmentXml(const std::string& path);
void saveAlignmentXml(const Alignment& alignment, const std::string& path);

}  // namespace kgmatch::align
