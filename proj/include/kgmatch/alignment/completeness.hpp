#pragma once

#include <array>
#include <string_view>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/rdf/graph.hpp"

namespace kgmatch::align {

enum class GoldStandardCompleteness {
  kComplete,
  kPartialSourceCompleteTargetComplete,
  kPartialSourceIncompleteTargetComplete,
  kPartialSourceCompleteTargetIncomplete,
  kPartialSourceIncompleteTargetIncomplete,
};

inline constexpr std::array<GoldStandardCompleteness, 5> kAllCompletenessLevels = {
    GoldStandardCompleteness::kComplete,
    GoldStandardCompleteness::kPartialSourceCompleteTargetComplete,
    GoldStandardCompleteness::kPartialSourceIncompleteTargetComplete,
    GoldStandardCompleteness::kPartialSourceCompleteTargetIncomplete,
    GoldStandardCompleteness::kPartialSourceIncompleteTargetIncomplete,
};

bool isSourceComplete(GoldStandardCompleteness level);
bool isTargetComplete(GoldStandardCompleteness level);

// Names as used in manifests: COMPLETE, PARTIAL_SOURCE_COMPLETE_TARGET_COMPLETE, ...
std::string_view toString(GoldStandardCompleteness level);
GoldStandardCompleteness parseCompleteness(std::string_view name);

enum class Verdict { kTruePositive, kFalsePositive, kUnjudgeable };

std::string_view toString(Verdict verdict);

// A correspondence outside the reference is wrong when the reference is
// complete, or when it touches an entity of a complete side that the
// reference mentions; otherwise it cannot be judged.
Verdict judge(const Correspondence& correspondence, const Alignment& reference,
              GoldStandardCompleteness completeness);

struct TestCase {
  rdf::Graph source;
  rdf::Graph target;
  Alignment reference;
  GoldStandardCompleteness completeness = GoldStandardCompleteness::kComplete;
};

}  // namespace kgmatch::align
