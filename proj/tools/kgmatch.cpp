#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kgmatch/alignment/completeness.hpp"
#include "kgmatch/alignment/xml.hpp"
#include "kgmatch/embed/embedding.hpp"
#include "kgmatch/eval/evaluation.hpp"
#include "kgmatch/filters/filters.hpp"
#include "kgmatch/matchers/matchers.hpp"
#include "kgmatch/pipeline/pipeline.hpp"
#include "kgmatch/rdf/ntriples.hpp"

namespace {

namespace fs = std::filesystem;
using namespace kgmatch;

struct Common {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out;
};

void addCommon(CLI::App* app, Common& common, bool out_required) {
  app->add_option("--seed", common.seed, "Master seed");
  app->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* out = app->add_option("--out", common.out, "Output file or directory");
  if (out_required) out->required();
}

std::ofstream openOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

void announce(const std::string& role, const std::string& path) {
  std::cout << role << '\t' << path << '\n';
}

struct EvalArgs {
  std::string system;
  std::string reference;
  std::string baseline;
  std::string completeness = "COMPLETE";
  std::string name = "test-case";
};

void addEvalArgs(CLI::App* app, EvalArgs& args) {
  app->add_option("--system", args.system, "System alignment XML")->required();
  app->add_option("--reference", args.reference, "Reference alignment XML")->required();
  app->add_option("--baseline", args.baseline, "Baseline alignment XML for residual recall");
  app->add_option("--completeness", args.completeness, "Gold standard completeness");
  app->add_option("--name", args.name, "Test case name");
}

int runEval(const EvalArgs& args, const Common& common, bool cube) {
  const auto system = align::loadAlignmentXml(args.system);
  const auto reference = align::loadAlignmentXml(args.reference);
  const auto completeness = align::parseCompleteness(args.completeness);
  std::optional<align::Alignment> baseline;
  if (!args.baseline.empty()) baseline = align::loadAlignmentXml(args.baseline);

  std::ofstream file;
  if (!common.out.empty()) file = openOut(common.out);
  std::ostream& out = common.out.empty() ? std::cout : file;
  if (cube) {
    eval::writeAlignmentCube(out, system, reference, baseline ? &*baseline : nullptr,
                             completeness);
  } else {
    const auto evaluation = eval::evaluate(system, reference, completeness);
    eval::SummaryRow row{args.name, evaluation.counts, evaluation.metrics};
    if (baseline) row.metrics = eval::residualMetrics(system, reference, *baseline, completeness);
    eval::writeMetricsSummary(out, {row});
  }
  if (!common.out.empty()) announce(cube ? "alignment-cube" : "metrics", common.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supervised ontology and instance matching toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kgmatch 1.0.0");

  Common common;

  std::string config;
  auto* run = app.add_subcommand("run", "Execute a pipeline manifest");
  run->add_option("--config", config, "Pipeline manifest (JSON)")->required()->check(CLI::ExistingFile);
  addCommon(run, common, false);

  std::string source;
  std::string target;
  bool features = false;
  auto* match = app.add_subcommand("match", "Label matching, optionally with all feature filters");
  match->add_option("--source", source, "Source graph (N-Triples)")->required()->check(CLI::ExistingFile);
  match->add_option("--target", target, "Target graph (N-Triples)")->required()->check(CLI::ExistingFile);
  match->add_flag("--features", features, "Annotate with every filter in every overlap mode");
  addCommon(match, common, true);

  std::string graph;
  std::string corpus_out;
  embed::WalkConfig walks;
  embed::EmbeddingConfig embedding;
  auto* emb = app.add_subcommand("embed", "Walk corpus and skip-gram embeddings of one graph");
  emb->add_option("--graph", graph, "Graph (N-Triples)")->required()->check(CLI::ExistingFile);
  emb->add_option("--walks", walks.walks_per_node, "Walks per node");
  emb->add_option("--depth", walks.depth, "Hops per walk");
  emb->add_option("--dimensions", embedding.dimensions, "Vector size");
  emb->add_option("--window", embedding.window, "Context window");
  emb->add_option("--min-count", embedding.min_count, "Minimum token frequency");
  emb->add_option("--negative", embedding.negative_samples, "Negative samples");
  emb->add_option("--epochs", embedding.epochs, "Training epochs");
  emb->add_option("--corpus-out", corpus_out, "Also write the walk corpus");
  addCommon(emb, common, true);

  EvalArgs eval_args;
  auto* ev = app.add_subcommand("eval", "Precision, recall, F-measure and residual recall");
  addEvalArgs(ev, eval_args);
  addCommon(ev, common, false);

  auto* cube = app.add_subcommand("cube", "Per-correspondence alignment cube CSV");
  addEvalArgs(cube, eval_args);
  addCommon(cube, common, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const fs::path manifest_path(config);
      pipeline::RunOptions options;
      options.seed = common.seed;
      options.threads = common.threads;
      if (!common.out.empty()) options.out_dir = common.out;
      options.base_dir = manifest_path.parent_path();
      const auto report = pipeline::runPipeline(pipeline::loadManifest(manifest_path), options);
      for (const auto& file : report.files) announce(file.role, file.path.string());
      return 0;
    }
    if (*match) {
      const auto src = rdf::loadNTriples(source, {.blank_scope = "source"});
      const auto tgt = rdf::loadNTriples(target, {.blank_scope = "target"});
      auto alignment = matchers::baseMatch(src, tgt);
      if (features) {
        filters::FilterConfig fc;
        for (auto mode : filters::kAllOverlapModes) {
          fc.overlap_mode = mode;
          alignment = filters::similarNeighboursFilter(alignment, src, tgt, fc);
          alignment = filters::commonPropertiesFilter(alignment, src, tgt, fc);
          alignment = filters::similarHierarchyFilter(alignment, src, tgt, fc);
          alignment = filters::similarTypeFilter(alignment, src, tgt, fc);
          alignment = filters::bagOfWordsSetSimilarityFilter(alignment, src, tgt, fc);
        }
      }
      align::saveAlignmentXml(alignment, common.out);
      announce("system-alignment", common.out);
      return 0;
    }
    if (*emb) {
      walks.threads = common.threads;
      if (common.seed) {
        walks.seed = *common.seed;
        embedding.seed = *common.seed + 1;
      }
      const auto corpus = embed::generateWalks(rdf::loadNTriples(graph), walks);
      if (!corpus_out.empty()) {
        auto out = openOut(corpus_out);
        embed::writeCorpus(out, corpus);
        announce("walk-corpus", corpus_out);
      }
      const auto space = embed::trainSkipGram(corpus, embedding);
      auto out = openOut(common.out);
      embed::writeEmbeddings(out, space);
      announce("embeddings", common.out);
      return 0;
    }
    if (*ev) return runEval(eval_args, common, false);
    if (*cube) return runEval(eval_args, common, true);
  } catch (const pipeline::StepError& e) {
    std::cerr << "kgmatch: " << e.what() << '\n';
    return e.exitCode();
  } catch (const std::exception& e) {
    std::cerr << "kgmatch: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
