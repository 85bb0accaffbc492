#include "kgmatch/rdf/ntriples.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "kgmatch/util/error.hpp"

namespace kgmatch::rdf {
namespace {

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Cursor over a single statement line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t number)
      : line_(line), number_(number) {}

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(number_, reason + " (column " + std::to_string(pos_ + 1) + ")");
  }

  void skipSpace() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool atEnd() const { return pos_ >= line_.size(); }
  char peek() const { return atEnd() ? '\0' : line_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint32_t hexEscape(int digits) {
    if (pos_ + digits > line_.size()) fail("truncated \\u escape");
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      const char c = line_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        fail("invalid hex digit in escape");
      }
    }
    if (cp > 0x10FFFF) fail("code point out of range");
    return cp;
  }

  std::string iriRef() {
    expect('<');
    std::string iri;
    for (;;) {
      if (atEnd()) fail("unterminated IRI");
      const char c = line_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        const char kind = peek();
        ++pos_;
        if (kind == 'u') {
          appendUtf8(iri, hexEscape(4));
        } else if (kind == 'U') {
          appendUtf8(iri, hexEscape(8));
        } else {
          fail("invalid escape in IRI");
        }
        continue;
      }
      if (c == ' ' || c == '<' || c == '"' || c == '\t') {
        fail("invalid character in IRI");
      }
      iri += c;
    }
    if (iri.empty()) fail("empty IRI");
    return iri;
  }

  std::string blankLabel() {
    expect('_');
    expect(':');
    const std::size_t start = pos_;
    while (!atEnd() && peek() != ' ' && peek() != '\t' && peek() != '<' &&
           peek() != '"') {
      ++pos_;
    }
    // A label may contain '.', but not end with one.
    while (pos_ > start && line_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return std::string(line_.substr(start, pos_ - start));
  }

  Literal literal() {
    expect('"');
    Literal lit;
    for (;;) {
      if (atEnd()) fail("unterminated literal");
      const char c = line_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lit.lexical += c;
        continue;
      }
      if (atEnd()) fail("dangling escape");
      const char kind = line_[pos_++];
      switch (kind) {
        case 't': lit.lexical += '\t'; break;
        case 'b': lit.lexical += '\b'; break;
        case 'n': lit.lexical += '\n'; break;
        case 'r': lit.lexical += '\r'; break;
        case 'f': lit.lexical += '\f'; break;
        case '"': lit.lexical += '"'; break;
        case '\'': lit.lexical += '\''; break;
        case '\\': lit.lexical += '\\'; break;
        case 'u': appendUtf8(lit.lexical, hexEscape(4)); break;
        case 'U': appendUtf8(lit.lexical, hexEscape(8)); break;
        default: fail("invalid escape in literal");
      }
    }
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                          peek() == '-')) {
        ++pos_;
      }
      if (pos_ == start) fail("empty language tag");
      lit.language = std::string(line_.substr(start, pos_ - start));
    } else if (peek() == '^') {
      ++pos_;
      expect('^');
      lit.datatype = iriRef();
    }
    return lit;
  }

 private:
  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

void parseLine(std::string_view line, std::size_t number, GraphBuilder& builder,
               const NTriplesOptions& options) {
  LineParser p(line, number);
  p.skipSpace();
  if (p.atEnd() || p.peek() == '#') return;

  const auto resource = [&]() -> TermId {
    if (p.peek() == '<') return builder.iri(p.iriRef());
    if (p.peek() == '_') return builder.blank(p.blankLabel(), options.blank_scope);
    p.fail("expected IRI or blank node");
  };

  const TermId subject = resource();
  p.skipSpace();
  if (p.peek() != '<') p.fail("predicate must be an IRI");
  const TermId predicate = builder.iri(p.iriRef());
  p.skipSpace();
  const TermId object =
      p.peek() == '"' ? builder.literal(p.literal()) : resource();
  p.skipSpace();
  p.expect('.');
  p.skipSpace();
  if (!p.atEnd() && p.peek() != '#') p.fail("trailing characters after '.'");
  builder.add(subject, predicate, object);
}

void writeIri(std::ostream& out, std::string_view iri) {
  out << '<';
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '\\') {
      static const char* kHex = "0123456789ABCDEF";
      out << "\\u00" << kHex[c >> 4] << kHex[c & 0xF];
    } else {
      out << c;
    }
  }
  out << '>';
}

void writeLiteral(std::ostream& out, const Term& term) {
  out << '"';
  for (char c : term.value) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      case '\b': out << "\\b"; break;
      case '\f': out << "\\f"; break;
      default: out << c;
    }
  }
  out << '"';
  if (term.language) {
    out << '@' << *term.language;
  } else if (term.datatype) {
    out << "^^";
    writeIri(out, *term.datatype);
  }
}

void writeTerm(std::ostream& out, const Term& term) {
  switch (term.kind) {
    case TermKind::kIri: writeIri(out, term.value); break;
    case TermKind::kBlank: out << "_:" << term.blank_label; break;
    case TermKind::kLiteral: writeLiteral(out, term); break;
  }
}

}  // namespace

Graph parseNTriples(std::istream& in, const NTriplesOptions& options) {
  GraphBuilder builder;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    parseLine(line, number, builder, options);
  }
  return std::move(builder).build();
}

Graph parseNTriples(std::string_view text, const NTriplesOptions& options) {
  std::istringstream in{std::string(text)};
  return parseNTriples(in, options);
}

Graph loadNTriples(const std::string& path, const NTriplesOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open N-Triples file " + path);
  return parseNTriples(in, options);
}

void writeNTriples(const Graph& graph, std::ostream& out) {
  for (const Triple& t : graph.triples()) {
    writeTerm(out, graph.term(t.subject));
    out << ' ';
    writeTerm(out, graph.term(t.predicate));
    out << ' ';
    writeTerm(out, graph.term(t.object));
    out << " .\n";
  }
}

}  // namespace kgmatch::rdf
