#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "kgmatch/embed/embedding.hpp"
#include "kgmatch/util/error.hpp"
#include "kgmatch/util/random.hpp"

namespace kgmatch::embed {
namespace {

// Outgoing edges to resources, grouped per subject.
struct Adjacency {
  std::vector<std::vector<rdf::Triple>> edges;  // indexed by TermId
};

Adjacency buildAdjacency(const rdf::Graph& graph) {
  Adjacency adjacency;
  adjacency.edges.resize(graph.termCount());
  for (const rdf::Triple& t : graph.triples()) {
    if (graph.term(t.object).isResource()) adjacency.edges[t.subject].push_back(t);
  }
  return adjacency;
}

}  // namespace

Corpus generateWalks(const rdf::Graph& graph, const WalkConfig& config) {
  if (config.walks_per_node < 1) throw Error("walks per node must be >= 1");
  if (config.depth < 1) throw Error("walk depth must be >= 1");
  const Adjacency adjacency = buildAdjacency(graph);
  std::vector<rdf::TermId> starts;
  for (rdf::TermId s : graph.subjects()) {
    if (!adjacency.edges[s].empty()) starts.push_back(s);
  }
  std::sort(starts.begin(), starts.end(), [&](rdf::TermId a, rdf::TermId b) {
    return graph.value(a) < graph.value(b);
  });

  Corpus corpus(starts.size() * config.walks_per_node);
  const auto walkFrom = [&](std::size_t ordinal) {
    Rng rng(mixSeed(config.seed, ordinal));
    for (std::size_t w = 0; w < config.walks_per_node; ++w) {
      Walk& walk = corpus[ordinal * config.walks_per_node + w];
      rdf::TermId node = starts[ordinal];
      walk.emplace_back(graph.value(node));
      for (std::size_t hop = 0; hop < config.depth; ++hop) {
        const auto& out = adjacency.edges[node];
        if (out.empty()) break;
        const rdf::Triple& edge = out[rng.below(out.size())];
        walk.emplace_back(graph.value(edge.predicate));
        walk.emplace_back(graph.value(edge.object));
        node = edge.object;
      }
    }
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++) walkFrom(i);
  };
  if (config.threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < config.threads; ++t) pool.emplace_back(worker);
  }
  return corpus;
}

void writeCorpus(std::ostream& out, const Corpus& corpus) {
  for (const Walk& walk : corpus) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i > 0) out << ' ';
      out << walk[i];
    }
    out << '\n';
  }
}

Corpus readCorpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    Walk walk;
    for (std::string token; tokens >> token;) walk.push_back(std::move(token));
    if (!walk.empty()) corpus.push_back(std::move(walk));
  }
  return corpus;
}

}  // namespace kgmatch::embed
