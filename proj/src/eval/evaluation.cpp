#include "kgmatch/eval/evaluation.hpp"

#include <set>

#include "kgmatch/util/error.hpp"
#include "kgmatch/util/text.hpp"

namespace kgmatch::eval {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t residualHits(const align::Alignment& system, const align::Alignment& reference,
                         const align::Alignment& baseline, std::size_t* nontrivial) {
  std::size_t hits = 0;
  *nontrivial = 0;
  for (const auto& c : reference) {
    if (baseline.contains(c.key())) continue;
    ++*nontrivial;
    if (system.contains(c.key())) ++hits;
  }
  return hits;
}

}  // namespace

Metrics metricsFromCounts(const ConfusionCounts& counts) {
  Metrics m;
  m.precision = ratio(counts.true_positives, counts.true_positives + counts.false_positives);
  m.recall = ratio(counts.true_positives, counts.true_positives + counts.false_negatives);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

Evaluation evaluate(const align::Alignment& system, const align::Alignment& reference,
                    align::GoldStandardCompleteness completeness) {
  Evaluation result;
  for (const auto& c : system) {
    switch (align::judge(c, reference, completeness)) {
      case align::Verdict::kTruePositive: ++result.counts.true_positives; break;
      case align::Verdict::kFalsePositive: ++result.counts.false_positives; break;
      case align::Verdict::kUnjudgeable: ++result.counts.unjudged; break;
    }
  }
  for (const auto& c : reference) {
    if (!system.contains(c.key())) ++result.counts.false_negatives;
  }
  result.metrics = metricsFromCounts(result.counts);
  return result;
}

Metrics residualMetrics(const align::Alignment& system, const align::Alignment& reference,
                        const align::Alignment& baseline,
                        align::GoldStandardCompleteness completeness) {
  Metrics m = evaluate(system, reference, completeness).metrics;
  std::size_t nontrivial = 0;
  const std::size_t hits = residualHits(system, reference, baseline, &nontrivial);
  m.residual_recall = ratio(hits, nontrivial);
  return m;
}

void writeAlignmentCube(std::ostream& out, const align::Alignment& system,
                        const align::Alignment& reference, const align::Alignment* baseline,
                        align::GoldStandardCompleteness completeness) {
  std::set<std::string> feature_keys;
  for (const auto& c : system) {
    for (const auto& [k, v] : c.extensions) feature_keys.insert(k);
  }
  for (const auto& c : reference) {
    for (const auto& [k, v] : c.extensions) feature_keys.insert(k);
  }

  std::vector<std::string> header = {"source", "target", "relation",
                                     "confidence", "verdict", "residualTP"};
  header.insert(header.end(), feature_keys.begin(), feature_keys.end());
  writeCsvRow(out, header);

  std::set<align::CorrespondenceKey> keys;
  for (const auto& c : system) keys.insert(c.key());
  for (const auto& c : reference) keys.insert(c.key());

  for (const auto& key : keys) {
    const align::Correspondence* in_system = system.find(key);
    const align::Correspondence* in_reference = reference.find(key);
    const align::Correspondence& row = in_system ? *in_system : *in_reference;
    std::string verdict = "FN";
    if (in_system) verdict = std::string(align::toString(align::judge(*in_system, reference, completeness)));
    const bool residual = in_system && in_reference &&
                          (baseline == nullptr || !baseline->contains(key));
    std::vector<std::string> fields = {
        key.source, key.target, std::string(align::toString(key.relation)),
        in_system ? formatDecimal(in_system->confidence) : std::string(), verdict,
        residual ? "1" : "0"};
    for (const auto& k : feature_keys) {
      const auto it = row.extensions.find(k);
      fields.push_back(it == row.extensions.end() ? std::string() : formatDecimal(it->second));
    }
    writeCsvRow(out, fields);
  }
  if (!out) throw Error("failed to write the alignment cube");
}

void writeMetricsSummary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  writeCsvRow(out, {"testCase", "P", "R", "F", "R+", "TP", "FP", "FN"});
  for (const auto& row : rows) {
    writeCsvRow(out, {row.test_case, formatDecimal(row.metrics.precision),
                      formatDecimal(row.metrics.recall), formatDecimal(row.metrics.f1),
                      row.metrics.residual_recall ? formatDecimal(*row.metrics.residual_recall)
                                                  : std::string(),
                      std::to_string(row.counts.true_positives),
                      std::to_string(row.counts.false_positives),
                      std::to_string(row.counts.false_negatives)});
  }
  if (!out) throw Error("failed to write the metrics summary");
}

}  // namespace kgmatch::eval
