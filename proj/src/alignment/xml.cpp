#include "kgmatch/alignment/xml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <sstream>

#include "kgmatch/util/error.hpp"
#include "kgmatch/util/text.hpp"

namespace kgmatch::align {
namespace {

namespace pt = boost::property_tree;

std::string escapeXml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string resourceOf(const pt::ptree& entity) {
  if (auto v = entity.get_optional<std::string>("<xmlattr>.rdf:resource")) return *v;
  if (auto v = entity.get_optional<std::string>("<xmlattr>.resource")) return *v;
  return {};
}

void readCell(const pt::ptree& cell, std::size_t ordinal, Alignment& out) {
  const auto fail = [ordinal](const std::string& reason) {
    return Error("Cell " + std::to_string(ordinal) + ": " + reason);
  };
  const auto entity1 = cell.get_child_optional("entity1");
  const auto entity2 = cell.get_child_optional("entity2");
  const auto relation = cell.get_optional<std::string>("relation");
  const auto measure = cell.get_optional<std::string>("measure");
  if (!entity1) throw fail("missing entity1");
  if (!entity2) throw fail("missing entity2");
  if (!relation) throw fail("missing relation");
  if (!measure) throw fail("missing measure");

  Correspondence c;
  c.source = resourceOf(*entity1);
  c.target = resourceOf(*entity2);
  if (c.source.empty() || c.target.empty()) throw fail("entity without resource");
  try {
    c.relation = parseRelation(trim(*relation));
    c.confidence = parseDecimal(*measure);
    for (const auto& [name, child] : cell) {
      if (name != "ext") continue;
      const auto key = child.get_optional<std::string>("<xmlattr>.key");
      if (!key) throw Error("ext without key");
      c.extensions[*key] = parseDecimal(child.data());
    }
    out.add(std::move(c));
  } catch (const Error& e) {
    throw fail(e.what());
  }
}

}  // namespace

std::string serializeAlignmentXml(const Alignment& alignment) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
      << "<Alignment xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\">\n";
  for (const Correspondence& c : alignment) {
    out << "  <map>\n"
        << "    <Cell>\n"
        << "      <entity1 rdf:resource=\"" << escapeXml(c.source) << "\"/>\n"
        << "      <entity2 rdf:resource=\"" << escapeXml(c.target) << "\"/>\n"
        << "      <relation>" << escapeXml(toString(c.relation)) << "</relation>\n"
        << "      <measure>" << formatDecimal(c.confidence) << "</measure>\n";
    for (const auto& [key, value] : c.extensions) {
      out << "      <ext key=\"" << escapeXml(key) << "\">" << formatDecimal(value)
          << "</ext>\n";
    }
    out << "    </Cell>\n"
        << "  </map>\n";
  }
  out << "</Alignment>\n";
  return out.str();
}

Alignment parseAlignmentXml(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(std::string("malformed alignment XML: ") + e.what());
  }
  const pt::ptree* root = nullptr;
  if (auto direct = tree.get_child_optional("Alignment")) {
    root = &*direct;
  } else if (auto wrapped = tree.get_child_optional("rdf:RDF.Alignment")) {
    root = &*wrapped;
  } else {
    throw Error("alignment XML has no Alignment element");
  }
  Alignment alignment;
  std::size_t ordinal = 0;
  for (const auto& [name, map] : *root) {
    if (name != "map") continue;
    for (const auto& [child_name, cell] : map) {
      if (child_name != "Cell") continue;
      readCell(cell, ++ordinal, alignment);
    }
  }
  return alignment;
}

Alignment loadAlignmentXml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alignment file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseAlignmentXml(buffer.str());
}

void saveAlignmentXml(const Alignment& alignment, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write alignment file " + path);
  out << serializeAlignmentXml(alignment);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace kgmatch::align
