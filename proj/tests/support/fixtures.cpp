#include "fixtures.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "kgmatch/alignment/xml.hpp"
#include "kgmatch/rdf/ntriples.hpp"

namespace kgmatch::testing {

namespace fs = std::filesystem;

rdf::Graph graph(std::string_view ntriples) { return rdf::parseNTriples(ntriples); }

align::Alignment randomAlignment(Rng& rng, std::size_t max_size, std::size_t sources,
                                 std::size_t targets, bool with_extensions) {
  align::Alignment a;
  const std::size_t n = rng.below(max_size + 1);
  for (std::size_t i = 0; i < n; ++i) {
    align::Correspondence c;
    c.source = "http://s.example/s" + std::to_string(rng.below(sources));
    c.target = "http://t.example/t" + std::to_string(rng.below(targets));
    c.confidence = static_cast<double>(rng.below(1001)) / 1000.0;
    if (with_extensions) {
      const std::size_t k = rng.below(4);
      for (std::size_t e = 0; e < k; ++e) {
        c.extensions["filter/f" + std::to_string(rng.below(6))] =
            (static_cast<double>(rng.below(2000001)) - 1000000.0) / 1000.0;
      }
    }
    a.add(std::move(c));
  }
  return a;
}

std::string twinGraph(std::uint64_t seed, std::size_t nodes, std::size_t out_degree,
                      std::size_t predicates, const std::string& ns) {
  Rng rng(seed);
  std::ostringstream out;
  for (std::size_t i = 0; i < nodes; ++i) {
    std::set<std::pair<std::size_t, std::size_t>> edges;
    while (edges.size() < out_degree) {
      const std::size_t j = rng.below(nodes);
      if (j == i) continue;
      edges.emplace(rng.below(predicates), j);
    }
    for (const auto& [p, j] : edges) {
      out << '<' << ns << 'n' << i << "> <" << ns << 'p' << p << "> <" << ns << 'n' << j
          << "> .\n";
    }
  }
  return out.str();
}

namespace {

const char* const kWords[] = {"alpha", "bravo", "comet", "delta", "ember", "fjord", "gale",
                              "harbor", "ion", "jade", "kite", "lumen", "mesa", "nova",
                              "orbit", "pike", "quartz", "raven", "sable", "tide"};

std::string label(Rng& rng) {
  std::string s = kWords[rng.below(std::size(kWords))];
  s += ' ';
  s += kWords[rng.below(std::size(kWords))];
  return s;
}

std::string capitalized(std::string s) {
  bool start = true;
  for (char& ch : s) {
    if (start && ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
    start = ch == ' ';
  }
  return s;
}

}  // namespace

KgPair kgPair(std::uint64_t seed, std::size_t entities) {
  Rng rng(seed);
  const std::string schema = "http://schema.example/";
  const std::string rdf_type = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
  const std::string subclass = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";
  const std::string rdfs_label = "<http://www.w3.org/2000/01/rdf-schema#label>";
  constexpr std::size_t kClasses = 6;
  constexpr std::size_t kProperties = 5;

  std::ostringstream src;
  std::ostringstream tgt;
  for (std::size_t c = 1; c < kClasses; ++c) {
    const std::string line = "<" + schema + "C" + std::to_string(c) + "> " + subclass + " <" +
                             schema + "C" + std::to_string((c - 1) / 2) + "> .\n";
    src << line;
    tgt << line;
  }

  struct Entity {
    std::string label;
    std::size_t type;
    std::vector<std::pair<std::size_t, std::size_t>> links;  // (property, entity)
  };
  std::vector<Entity> es(entities);
  for (auto& e : es) {
    e.label = label(rng);
    e.type = rng.below(kClasses);
    const std::size_t degree = 1 + rng.below(3);
    for (std::size_t d = 0; d < degree; ++d) {
      e.links.emplace_back(rng.below(kProperties), rng.below(entities));
    }
  }

  const auto emit = [&](std::ostringstream& out, const std::string& ns, std::size_t i,
                        const Entity& e, const std::string& shown) {
    const std::string self = "<" + ns + "e" + std::to_string(i) + ">";
    out << self << ' ' << rdfs_label << " \"" << shown << "\"@en .\n";
    out << self << ' ' << rdf_type << " <" << schema << 'C' << e.type << "> .\n";
    for (const auto& [p, j] : e.links) {
      out << self << " <" << schema << 'p' << p << "> <" << ns << 'e' << j << "> .\n";
    }
  };

  KgPair pair;
  for (std::size_t i = 0; i < entities; ++i) {
    emit(src, "http://src.example/", i, es[i], es[i].label);
    emit(tgt, "http://tgt.example/", i, es[i],
         rng.below(2) == 0 ? es[i].label : capitalized(es[i].label));
    pair.reference.add({"http://src.example/e" + std::to_string(i),
                        "http://tgt.example/e" + std::to_string(i),
                        align::Relation::kEquivalence, 1.0, {}});
  }
  // Decoys: same label as an existing entity, unrelated type and links.
  for (std::size_t d = 0; d < entities / 3; ++d) {
    const std::size_t twin = rng.below(entities);
    Entity decoy{es[twin].label, (es[twin].type + 1 + rng.below(kClasses - 1)) % kClasses, {}};
    decoy.links.emplace_back(rng.below(kProperties), rng.below(entities));
    emit(tgt, "http://tgt.example/", entities + d, decoy, decoy.label);
  }
  pair.source = src.str();
  pair.target = tgt.str();
  return pair;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  Rng rng(static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  path_ = fs::temp_directory_path() /
          ("kgmatch-test-" + std::to_string(rng.next() % 1000000007) + "-" +
           std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string readText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void writeKgPair(const KgPair& pair, const fs::path& dir) {
  writeText(dir / "source.nt", pair.source);
  writeText(dir / "target.nt", pair.target);
  writeText(dir / "reference.rdf", align::serializeAlignmentXml(pair.reference));
}

}  // namespace kgmatch::testing
