#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/rdf/graph.hpp"

namespace kgmatch::embed {

// A walk alternates node and predicate tokens: n0 p1 n1 p2 n2 ...
using Walk = std::vector<std::string>;
using Corpus = std::vector<Walk>;

struct WalkConfig {
  std::size_t walks_per_node = 100;
  // Hops per walk; a walk holds at most 2 * depth + 1 tokens.
  std::size_t depth = 4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// walks_per_node walks from every resource with at least one outgoing
// resource-valued triple, in IRI order. Each step follows an outgoing triple
// drawn uniformly; a walk stops early at a node without one. Every start
// node draws from its own seeded stream, so the corpus does not depend on
// the thread count.
Corpus generateWalks(const rdf::Graph& graph, const WalkConfig& config);

// One walk per line, tokens separated by single spaces.
void writeCorpus(std::ostream& out, const Corpus& corpus);
Corpus readCorpus(std::istream& in);

struct EmbeddingConfig {
  std::size_t dimensions = 50;
  std::size_t window = 5;
  std::size_t min_count = 1;
  std::size_t negative_samples = 5;
  std::size_t epochs = 5;
  // Decays linearly towards 1e-4 of its start value.
  double learning_rate = 0.025;
  std::uint64_t seed = 0;

  void validate() const;
};

// Token -> vector table.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  EmbeddingSpace(std::size_t dimensions, std::vector<std::string> tokens,
                 std::vector<float> data, std::vector<std::uint8_t> predicate);

  std::size_t size() const { return tokens_.size(); }
  std::size_t dimensions() const { return dimensions_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::optional<std::size_t> find(std::string_view token) const;
  std::span<const float> vector(std::size_t index) const {
    return {data_.data() + index * dimensions_, dimensions_};
  }
  // Tokens seen only in predicate positions of the walk corpus.
  bool isPredicate(std::size_t index) const { return predicate_[index] != 0; }

 private:
  std::size_t dimensions_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
  std::vector<std::uint8_t> predicate_;
};

// Skip-gram with negative sampling over the walk corpus. Single worker, so
// the result is fully determined by the corpus and the config.
EmbeddingSpace trainSkipGram(const Corpus& corpus, const EmbeddingConfig& config);

// Header "|V| d", then "token v1 ... vd" per line. Predicate flags are not
// stored; every token reads back as a node.
void writeEmbeddings(std::ostream& out, const EmbeddingSpace& space);
EmbeddingSpace readEmbeddings(std::istream& in);

// Linear map W (source_dims x target_dims, row-major) applied as x W.
struct ProjectionMap {
  std::size_t source_dims = 0;
  std::size_t target_dims = 0;
  std::vector<double> matrix;
  double ridge = 0.0;

  double at(std::size_t row, std::size_t col) const { return matrix[row * target_dims + col]; }
  std::vector<double> project(std::span<const float> x) const;
};

inline constexpr double kDefaultRidge = 1e-3;

// Ridge least squares: W = argmin |XW - Y|^2 + ridge |W|^2, solved through
// the normal equations by Cholesky. Anchors whose tokens are missing from
// either space are skipped.
ProjectionMap trainProjection(const std::vector<std::pair<std::string, std::string>>& anchors,
                              const EmbeddingSpace& source, const EmbeddingSpace& target,
                              double ridge = kDefaultRidge);

inline constexpr double kDefaultProjectionThreshold = 0.85;

// For each source node token, the target node token whose vector has the
// highest cosine with the projected source vector; emitted when that cosine
// is strictly above the threshold, with confidence max(0, cosine).
align::Alignment projectionMatch(const EmbeddingSpace& source, const EmbeddingSpace& target,
                                 const ProjectionMap& map,
                                 double threshold = kDefaultProjectionThreshold);

}  // namespace kgmatch::embed
