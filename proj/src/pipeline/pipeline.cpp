#include "kgmatch/pipeline/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/alignment/completeness.hpp"
#include "kgmatch/alignment/xml.hpp"
#include "kgmatch/embed/embedding.hpp"
#include "kgmatch/eval/evaluation.hpp"
#include "kgmatch/filters/filters.hpp"
#include "kgmatch/matchers/matchers.hpp"
#include "kgmatch/ml/dataset.hpp"
#include "kgmatch/ml/grid_search.hpp"
#include "kgmatch/rdf/ntriples.hpp"
#include "kgmatch/util/random.hpp"

namespace kgmatch::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct State {
  const RunOptions* options = nullptr;
  std::uint64_t seed = 0;
  fs::path base_dir;
  fs::path out_dir;
  align::TestCase test_case;
  align::Alignment current;
  std::optional<align::Alignment> sample;
  std::optional<ml::GridSearchResult> search;
  std::vector<eval::SummaryRow> summary;
  std::optional<align::Alignment> cube_baseline;
  bool evaluated = false;
  std::string name = "test-case";
};

template <typename T>
T get(const json& params, const char* key, T fallback) {
  const auto it = params.find(key);
  if (it == params.end() || it->is_null()) return fallback;
  return it->get<T>();
}

std::vector<filters::OverlapMode> overlapModes(const json& params) {
  if (params.contains("overlap_mode")) {
    return {filters::parseOverlapMode(params.at("overlap_mode").get<std::string>())};
  }
  if (params.contains("overlap_modes")) {
    std::vector<filters::OverlapMode> modes;
    for (const auto& m : params.at("overlap_modes")) {
      modes.push_back(filters::parseOverlapMode(m.get<std::string>()));
    }
    return modes;
  }
  return {std::begin(filters::kAllOverlapModes), std::end(filters::kAllOverlapModes)};
}

filters::FilterConfig filterConfig(const json& params) {
  filters::FilterConfig config;
  if (params.contains("literal_comparison")) {
    config.literal_comparison =
        filters::parseLiteralComparison(params.at("literal_comparison").get<std::string>());
  }
  if (params.contains("tokenizer")) {
    config.tokenizer = filters::parseTokenizer(params.at("tokenizer").get<std::string>());
  }
  if (params.contains("direction")) {
    const auto d = params.at("direction").get<std::string>();
    if (d == "OUTGOING") config.neighbour_direction = rdf::Direction::kOutgoing;
    else if (d == "INCOMING") config.neighbour_direction = rdf::Direction::kIncoming;
    else if (d == "BOTH") config.neighbour_direction = rdf::Direction::kBoth;
    else throw Error("unknown direction " + d);
  }
  if (params.contains("excluded_properties")) {
    config.excluded_properties = params.at("excluded_properties").get<std::set<std::string>>();
  }
  config.literal_property = get(params, "literal_property", config.literal_property);
  config.instance_to_hierarchy_property =
      get(params, "instance_to_hierarchy_property", config.instance_to_hierarchy_property);
  config.hierarchy_property = get(params, "hierarchy_property", config.hierarchy_property);
  config.level_discount = get(params, "level_discount", config.level_discount);
  config.hierarchy_depth_cap = get(params, "hierarchy_depth_cap", config.hierarchy_depth_cap);
  config.validate();
  return config;
}

using FilterFn = align::Alignment (*)(const align::Alignment&, const rdf::Graph&,
                                      const rdf::Graph&, const filters::FilterConfig&);

void applyFilter(State& state, const json& params, FilterFn fn) {
  filters::FilterConfig config = filterConfig(params);
  for (filters::OverlapMode mode : overlapModes(params)) {
    config.overlap_mode = mode;
    state.current = fn(state.current, state.test_case.source, state.test_case.target, config);
  }
}

void stepBaseMatch(State& state, const json& params) {
  matchers::BaseMatcherOptions options;
  options.label_properties = get(params, "label_properties", options.label_properties);
  options.include_blank_nodes = get(params, "include_blank_nodes", options.include_blank_nodes);
  state.current = matchers::baseMatch(state.test_case.source, state.test_case.target, options);
}

void stepSupervised(State& state, const json& params) {
  const double fraction = get(params, "sample_fraction", 0.2);
  const auto folds = get<std::size_t>(params, "folds", 5);
  ml::GridOptions grid_options;
  grid_options.coarse = get(params, "coarse_grid", false);
  if (params.contains("families")) {
    grid_options.families.clear();
    for (const auto& f : params.at("families")) {
      grid_options.families.push_back(ml::parseFamily(f.get<std::string>()));
    }
  }
  align::Split split = align::sampleByFraction(state.test_case.reference, fraction,
                                               mixSeed(state.seed, 0x5a11));
  ml::SearchOptions search;
  search.threads = state.options->threads;
  const auto keys = ml::featureKeysOf(state.current);
  if (keys.empty()) throw Error("candidates carry no features; run feature filters first");
  auto result = ml::supervisedMatchFilter(state.current, split.sampled, keys,
                                          ml::defaultGrid(grid_options), folds,
                                          mixSeed(state.seed, 0xc1a5), search);
  state.current = std::move(result.alignment);
  state.search = std::move(result.search);
  state.sample = std::move(split.sampled);
}

void stepThreshold(State& state, const json& params) {
  if (!params.contains("threshold")) throw Error("missing 'threshold'");
  state.current = filters::thresholdFilter(state.current, params.at("threshold").get<double>());
}

void stepForward(State& state, const json& params) {
  if (!params.contains("alignment")) throw Error("missing 'alignment'");
  state.current = matchers::forwardMatch(align::loadAlignmentXml(
      resolveDataPath(params.at("alignment").get<std::string>(), state.base_dir).string()));
}

void stepEmbedProjection(State& state, const json& params) {
  embed::WalkConfig walks;
  walks.walks_per_node = get(params, "walks_per_node", walks.walks_per_node);
  walks.depth = get(params, "depth", walks.depth);
  walks.threads = state.options->threads;
  embed::EmbeddingConfig embedding;
  embedding.dimensions = get(params, "dimensions", embedding.dimensions);
  embedding.window = get(params, "window", embedding.window);
  embedding.min_count = get(params, "min_count", embedding.min_count);
  embedding.negative_samples = get(params, "negative_samples", embedding.negative_samples);
  embedding.epochs = get(params, "epochs", embedding.epochs);
  embedding.learning_rate = get(params, "learning_rate", embedding.learning_rate);
  const double fraction = get(params, "sample_fraction", 0.5);
  const double ridge = get(params, "ridge", embed::kDefaultRidge);
  const double threshold = get(params, "threshold", embed::kDefaultProjectionThreshold);

  walks.seed = mixSeed(state.seed, 1);
  embedding.seed = mixSeed(state.seed, 2);
  const auto source_space =
      embed::trainSkipGram(embed::generateWalks(state.test_case.source, walks), embedding);
  walks.seed = mixSeed(state.seed, 3);
  embedding.seed = mixSeed(state.seed, 4);
  const auto target_space =
      embed::trainSkipGram(embed::generateWalks(state.test_case.target, walks), embedding);

  align::Split split = align::sampleByFraction(state.test_case.reference, fraction,
                                               mixSeed(state.seed, 0x5a11));
  std::vector<std::pair<std::string, std::string>> anchors;
  for (const auto& c : split.sampled) anchors.emplace_back(c.source, c.target);
  const auto map = embed::trainProjection(anchors, source_space, target_space, ridge);
  state.current = embed::projectionMatch(source_space, target_space, map, threshold);
  state.sample = std::move(split.sampled);
}

void stepEvaluate(State& state, const json& params) {
  const std::string baseline = get<std::string>(params, "baseline", "none");
  std::optional<align::Alignment> base;
  if (baseline == "sample") {
    if (!state.sample) throw Error("baseline 'sample' needs a preceding sampling step");
    base = *state.sample;
  } else if (baseline != "none") {
    base = align::loadAlignmentXml(resolveDataPath(baseline, state.base_dir).string());
  }
  const auto completeness = state.test_case.completeness;
  eval::SummaryRow row;
  row.test_case = get<std::string>(params, "name", state.name);
  const auto evaluation = eval::evaluate(state.current, state.test_case.reference, completeness);
  row.counts = evaluation.counts;
  row.metrics = evaluation.metrics;
  if (base) {
    row.metrics = eval::residualMetrics(state.current, state.test_case.reference, *base,
                                        completeness);
  }
  state.summary.push_back(std::move(row));
  state.cube_baseline = std::move(base);
  state.evaluated = true;
}

using StepFn = std::function<void(State&, const json&)>;

const std::map<std::string, StepFn>& registry() {
  static const std::map<std::string, StepFn> steps = {
      {"base_match", stepBaseMatch},
      {"similar_neighbours",
       [](State& s, const json& p) { applyFilter(s, p, filters::similarNeighboursFilter); }},
      {"common_properties",
       [](State& s, const json& p) { applyFilter(s, p, filters::commonPropertiesFilter); }},
      {"similar_hierarchy",
       [](State& s, const json& p) { applyFilter(s, p, filters::similarHierarchyFilter); }},
      {"similar_type",
       [](State& s, const json& p) { applyFilter(s, p, filters::similarTypeFilter); }},
      {"bag_of_words",
       [](State& s, const json& p) {
         applyFilter(s, p, filters::bagOfWordsSetSimilarityFilter);
       }},
      {"supervised_filter", stepSupervised},
      {"naive_descending_extract",
       [](State& s, const json&) { s.current = filters::naiveDescendingExtract(s.current); }},
      {"threshold", stepThreshold},
      {"forward", stepForward},
      {"embed_projection", stepEmbedProjection},
      {"evaluate", stepEvaluate},
  };
  return steps;
}

std::string stepName(const json& step) {
  if (step.is_string()) return step.get<std::string>();
  if (step.is_object() && step.contains("step") && step.at("step").is_string()) {
    return step.at("step").get<std::string>();
  }
  throw StepError("<manifest>", "each step must be a name or an object with a 'step' field");
}

void writeFile(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

std::vector<std::string> knownSteps() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

fs::path resolveDataPath(const std::string& path, const fs::path& base_dir) {
  const fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv(kDataDirVariable); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / p;
  }
  return base_dir / p;
}

void validateManifest(const json& manifest) {
  if (!manifest.is_object()) throw StepError("<manifest>", "manifest must be a JSON object");
  for (const char* key : {"source", "target", "reference"}) {
    if (!manifest.contains(key) || !manifest.at(key).is_string()) {
      throw StepError("<manifest>", std::string("missing string field '") + key + "'");
    }
  }
  if (!manifest.contains("steps") || !manifest.at("steps").is_array()) {
    throw StepError("<manifest>", "missing 'steps' array");
  }
  for (const auto& step : manifest.at("steps")) {
    const std::string name = stepName(step);
    if (!registry().contains(name)) throw StepError(name, "unknown step", 2);
  }
}

json loadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw StepError("<manifest>", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw StepError("<manifest>", e.what());
  }
}

RunReport runPipeline(const json& manifest, const RunOptions& options) {
  validateManifest(manifest);
  State state;
  state.options = &options;
  state.base_dir = options.base_dir;
  try {
    state.seed = options.seed ? *options.seed : manifest.value("seed", std::uint64_t{0});
    state.out_dir = options.out_dir ? *options.out_dir
                                    : fs::path(manifest.value("output", std::string("out")));
    state.name = manifest.value("name", state.name);
  } catch (const json::exception& e) {
    throw StepError("<manifest>", e.what());
  }

  try {
    state.test_case.source = rdf::loadNTriples(
        resolveDataPath(manifest.at("source").get<std::string>(), state.base_dir).string(),
        {.blank_scope = "source"});
    state.test_case.target = rdf::loadNTriples(
        resolveDataPath(manifest.at("target").get<std::string>(), state.base_dir).string(),
        {.blank_scope = "target"});
    state.test_case.reference = align::loadAlignmentXml(
        resolveDataPath(manifest.at("reference").get<std::string>(), state.base_dir).string());
    state.test_case.completeness =
        align::parseCompleteness(manifest.value("completeness", std::string("COMPLETE")));
  } catch (const std::exception& e) {
    throw StepError("load", e.what());
  }

  for (const auto& step : manifest.at("steps")) {
    const std::string name = stepName(step);
    const json params = step.is_object() ? step : json::object();
    try {
      registry().at(name)(state, params);
    } catch (const StepError&) {
      throw;
    } catch (const std::exception& e) {
      throw StepError(name, e.what());
    }
  }
  if (!state.evaluated) {
    stepEvaluate(state, json{{"baseline", state.sample ? "sample" : "none"}});
  }

  RunReport report;
  try {
    fs::create_directories(state.out_dir);
    const fs::path system = state.out_dir / "system.rdf";
    writeFile(system, [&](std::ostream& out) { out << align::serializeAlignmentXml(state.current); });
    report.files.push_back({"system-alignment", system});

    const fs::path metrics = state.out_dir / "metrics.csv";
    writeFile(metrics, [&](std::ostream& out) { eval::writeMetricsSummary(out, state.summary); });
    report.files.push_back({"metrics", metrics});

    const fs::path cube = state.out_dir / "cube.csv";
    writeFile(cube, [&](std::ostream& out) {
      eval::writeAlignmentCube(out, state.current, state.test_case.reference,
                               state.cube_baseline ? &*state.cube_baseline : nullptr,
                               state.test_case.completeness);
    });
    report.files.push_back({"alignment-cube", cube});

    if (state.search) {
      const fs::path selection = state.out_dir / "model_selection.csv";
      writeFile(selection, [&](std::ostream& out) { ml::writeModelSelectionCsv(out, *state.search); });
      report.files.push_back({"model-selection", selection});
    }
  } catch (const std::exception& e) {
    throw StepError("write", e.what());
  }
  return report;
}

}  // namespace kgmatch::pipeline
