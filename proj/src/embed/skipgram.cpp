#include <algorithm>
#include <cmath>
#include <map>

#include "kgmatch/embed/embedding.hpp"
#include "kgmatch/simd/kernels.hpp"
#include "kgmatch/util/error.hpp"
#include "kgmatch/util/random.hpp"
#include "kgmatch/util/text.hpp"

namespace kgmatch::embed {
namespace {

struct Vocabulary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint8_t> predicate;
  std::unordered_map<std::string, std::size_t> index;
};

Vocabulary buildVocabulary(const Corpus& corpus, std::size_t min_count) {
  struct Stats {
    std::uint64_t count = 0;
    bool seen_as_node = false;
  };
  std::unordered_map<std::string, Stats> stats;
  for (const Walk& walk : corpus) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      Stats& s = stats[walk[i]];
      ++s.count;
      if (i % 2 == 0) s.seen_as_node = true;
    }
  }
  std::vector<std::pair<std::string, Stats>> kept;
  for (auto& [token, s] : stats) {
    if (s.count >= min_count) kept.emplace_back(token, s);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.first < b.first;
  });
  Vocabulary vocab;
  for (auto& [token, s] : kept) {
    vocab.index.emplace(token, vocab.tokens.size());
    vocab.tokens.push_back(token);
    vocab.counts.push_back(s.count);
    vocab.predicate.push_back(s.seen_as_node ? 0 : 1);
  }
  return vocab;
}

float sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

}  // namespace

void EmbeddingConfig::validate() const {
  if (dimensions < 1) throw Error("embedding dimensions must be >= 1");
  if (window < 1) throw Error("window must be >= 1");
  if (min_count < 1) throw Error("min count must be >= 1");
  if (epochs < 1) throw Error("epochs must be >= 1");
  if (!(learning_rate > 0)) throw Error("learning rate must be positive");
}

EmbeddingSpace::EmbeddingSpace(std::size_t dimensions, std::vector<std::string> tokens,
                               std::vector<float> data, std::vector<std::uint8_t> predicate)
    : dimensions_(dimensions),
      tokens_(std::move(tokens)),
      data_(std::move(data)),
      predicate_(std::move(predicate)) {
  if (data_.size() != tokens_.size() * dimensions_ || predicate_.size() != tokens_.size()) {
    throw Error("embedding table shape mismatch");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) throw Error("duplicate token " + tokens_[i]);
  }
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingSpace trainSkipGram(const Corpus& corpus, const EmbeddingConfig& config) {
  config.validate();
  const Vocabulary vocab = buildVocabulary(corpus, config.min_count);
  if (vocab.tokens.empty()) throw Error("empty vocabulary: no token reaches the minimum count");
  const std::size_t v = vocab.tokens.size();
  const std::size_t d = config.dimensions;

  Rng rng(config.seed);
  std::vector<float> input(v * d);
  for (float& x : input) {
    x = static_cast<float>((rng.uniform() - 0.5) / static_cast<double>(d));
  }
  std::vector<float> output(v * d, 0.0f);

  // Negative sampling distribution: unigram counts raised to 3/4.
  std::vector<double> cumulative(v);
  double total_weight = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    total_weight += std::pow(static_cast<double>(vocab.counts[i]), 0.75);
    cumulative[i] = total_weight;
  }
  const auto drawNegative = [&]() -> std::size_t {
    const double u = rng.uniform() * total_weight;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), v - 1);
  };

  // Corpus as vocabulary indices; out-of-vocabulary tokens are dropped.
  std::vector<std::vector<std::size_t>> walks;
  std::uint64_t total_tokens = 0;
  walks.reserve(corpus.size());
  for (const Walk& walk : corpus) {
    std::vector<std::size_t> ids;
    for (const std::string& token : walk) {
      const auto it = vocab.index.find(token);
      if (it != vocab.index.end()) ids.push_back(it->second);
    }
    total_tokens += ids.size();
    walks.push_back(std::move(ids));
  }

  const double budget = static_cast<double>(total_tokens * config.epochs) + 1.0;
  std::uint64_t processed = 0;
  std::vector<float> gradient(d);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& walk : walks) {
      for (std::size_t i = 0; i < walk.size(); ++i, ++processed) {
        const float alpha = static_cast<float>(
            config.learning_rate *
            std::max(1e-4, 1.0 - static_cast<double>(processed) / budget));
        const std::size_t center = walk[i];
        std::span<float> center_vec(input.data() + center * d, d);
        const std::size_t lo = i >= config.window ? i - config.window : 0;
        const std::size_t hi = std::min(walk.size() - 1, i + config.window);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const std::size_t context = walk[j];
          std::fill(gradient.begin(), gradient.end(), 0.0f);
          for (std::size_t n = 0; n <= config.negative_samples; ++n) {
            std::size_t target = context;
            float label = 1.0f;
            if (n > 0) {
              target = drawNegative();
              if (target == context) continue;
              label = 0.0f;
            }
            std::span<float> target_vec(output.data() + target * d, d);
            const float score = simd::dot(std::span<const float>(center_vec),
                                          std::span<const float>(target_vec));
            const float g = (label - sigmoid(score)) * alpha;
            simd::axpy(g, std::span<const float>(target_vec), std::span<float>(gradient));
            simd::axpy(g, std::span<const float>(center_vec), target_vec);
          }
          simd::axpy(1.0f, std::span<const float>(gradient), center_vec);
        }
      }
    }
  }
  return EmbeddingSpace(d, vocab.tokens, std::move(input), vocab.predicate);
}

void writeEmbeddings(std::ostream& out, const EmbeddingSpace& space) {
  out << space.size() << ' ' << space.dimensions() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.tokens()[i];
    for (float x : space.vector(i)) out << ' ' << formatDecimal(x, 9);
    out << '\n';
  }
}

EmbeddingSpace readEmbeddings(std::istream& in) {
  std::size_t count = 0;
  std::size_t dims = 0;
  if (!(in >> count >> dims)) throw Error("embedding file lacks the '|V| d' header");
  std::vector<std::string> tokens(count);
  std::vector<float> data(count * dims);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> tokens[i])) throw Error("embedding file truncated at row " + std::to_string(i + 1));
    for (std::size_t k = 0; k < dims; ++k) {
      if (!(in >> data[i * dims + k])) {
        throw Error("embedding row " + std::to_string(i + 1) + " is short");
      }
    }
  }
  return EmbeddingSpace(dims, std::move(tokens), std::move(data),
                        std::vector<std::uint8_t>(count, 0));
}

}  // namespace kgmatch::embed
