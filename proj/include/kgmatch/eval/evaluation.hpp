#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/alignment/completeness.hpp"

namespace kgmatch::eval {

struct ConfusionCounts {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t unjudged = 0;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> residual_recall;
};

// Zero whenever a denominator is zero.
Metrics metricsFromCounts(const ConfusionCounts& counts);

struct Evaluation {
  ConfusionCounts counts;
  Metrics metrics;
};

// Unjudgeable correspondences count towards neither TP nor FP.
Evaluation evaluate(const align::Alignment& system, const align::Alignment& reference,
                    align::GoldStandardCompleteness completeness);

// evaluate() plus the share of reference \ baseline found by the system.
Metrics residualMetrics(const align::Alignment& system, const align::Alignment& reference,
                        const align::Alignment& baseline,
                        align::GoldStandardCompleteness completeness);

// One row per correspondence of system and reference, in key order:
// source,target,relation,confidence,verdict,residualTP, then one column per
// extension key. Reference-only rows are FN with a blank confidence.
void writeAlignmentCube(std::ostream& out, const align::Alignment& system,
                        const align::Alignment& reference, const align::Alignment* baseline,
                        align::GoldStandardCompleteness completeness);

struct SummaryRow {
  std::string test_case;
  ConfusionCounts counts;
  Metrics metrics;
};

// testCase,P,R,F,R+,TP,FP,FN; R+ blank when not computed.
void writeMetricsSummary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace kgmatch::eval
