#include "kgmatch/matchers/matchers.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include "kgmatch/util/text.hpp"

namespace kgmatch::matchers {
namespace {

bool isUnicodeSpace(std::uint32_t cp) {
  return cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Decodes one UTF-8 sequence starting at s[i]; malformed bytes decode as a
// single non-ASCII unit so they are dropped.
std::pair<std::uint32_t, std::size_t> decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t length = 1;
  std::uint32_t cp = b0;
  if (b0 >= 0xF0) {
    length = 4;
    cp = b0 & 0x07;
  } else if (b0 >= 0xE0) {
    length = 3;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xC0) {
    length = 2;
    cp = b0 & 0x1F;
  } else if (b0 >= 0x80) {
    return {0xFFFD, 1};
  }
  if (i + length > s.size()) return {0xFFFD, 1};
  for (std::size_t k = 1; k < length; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, length};
}

bool isAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

using LabelIndex = std::unordered_map<std::string, std::vector<std::string>>;

struct Indexes {
  LabelIndex exact;
  LabelIndex normalized;
};

Indexes indexLabels(const rdf::Graph& graph, const BaseMatcherOptions& options) {
  Indexes indexes;
  for (const std::string& property : options.label_properties) {
    const auto p = graph.findResource(property);
    if (!p) continue;
    for (const rdf::Triple& t : graph.byPredicate(*p)) {
      const rdf::Term& subject = graph.term(t.subject);
      const rdf::Term& object = graph.term(t.object);
      if (!object.isLiteral()) continue;
      if (subject.kind == rdf::TermKind::kBlank && !options.include_blank_nodes) {
        continue;
      }
      if (!trim(object.value).empty()) {
        indexes.exact[object.value].push_back(subject.value);
      }
      std::string normal = normalizeLabel(object.value);
      if (!normal.empty()) {
        indexes.normalized[std::move(normal)].push_back(subject.value);
      }
    }
  }
  return indexes;
}

std::set<std::pair<std::string, std::string>> joinOn(const LabelIndex& source,
                                                     const LabelIndex& target) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [label, subjects] : source) {
    const auto it = target.find(label);
    if (it == target.end()) continue;
    for (const std::string& s : subjects) {
      for (const std::string& t : it->second) pairs.emplace(s, t);
    }
  }
  return pairs;
}

}  // namespace

std::string normalizeLabel(std::string_view label) {
  std::string ascii;
  ascii.reserve(label.size());
  for (std::size_t i = 0; i < label.size();) {
    const auto [cp, length] = decode(label, i);
    i += length;
    if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      ascii += c;
    } else if (isUnicodeSpace(cp)) {
      ascii += ' ';
    }
  }
  std::string out;
  out.reserve(ascii.size());
  bool pending_space = false;
  for (char c : ascii) {
    if (isAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

align::Alignment baseMatch(const rdf::Graph& source, const rdf::Graph& target,
                           const BaseMatcherOptions& options) {
  const Indexes src = indexLabels(source, options);
  const Indexes tgt = indexLabels(target, options);
  const auto exact = joinOn(src.exact, tgt.exact);
  const auto normalized = joinOn(src.normalized, tgt.normalized);

  align::Alignment alignment;
  for (const auto& [s, t] : exact) {
    alignment.addWithFeature({s, t, align::Relation::kEquivalence, 1.0, {}},
                             std::string(kExactKey), 1.0);
  }
  for (const auto& [s, t] : normalized) {
    if (exact.count({s, t}) > 0) continue;
    alignment.addWithFeature({s, t, align::Relation::kEquivalence, 1.0, {}},
                             std::string(kNormalizedKey), 1.0);
  }
  return alignment;
}

}  // namespace kgmatch::matchers
