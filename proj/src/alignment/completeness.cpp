#include "kgmatch/alignment/completeness.hpp"

#include <string>

#include "kgmatch/util/error.hpp"

namespace kgmatch::align {

bool isSourceComplete(GoldStandardCompleteness level) {
  switch (level) {
    case GoldStandardCompleteness::kComplete:
    case GoldStandardCompleteness::kPartialSourceCompleteTargetComplete:
    case GoldStandardCompleteness::kPartialSourceCompleteTargetIncomplete:
      return true;
    default:
      return false;
  }
}

bool isTargetComplete(GoldStandardCompleteness level) {
  switch (level) {
    case GoldStandardCompleteness::kComplete:
    case GoldStandardCompleteness::kPartialSourceCompleteTargetComplete:
    case GoldStandardCompleteness::kPartialSourceIncompleteTargetComplete:
      return true;
    default:
      return false;
  }
}

std::string_view toString(GoldStandardCompleteness level) {
  switch (level) {
    case GoldStandardCompleteness::kComplete:
      return "COMPLETE";
    case GoldStandardCompleteness::kPartialSourceCompleteTargetComplete:
      return "PARTIAL_SOURCE_COMPLETE_TARGET_COMPLETE";
    case GoldStandardCompleteness::kPartialSourceIncompleteTargetComplete:
      return "PARTIAL_SOURCE_INCOMPLETE_TARGET_COMPLETE";
    case GoldStandardCompleteness::kPartialSourceCompleteTargetIncomplete:
      return "PARTIAL_SOURCE_COMPLETE_TARGET_INCOMPLETE";
    case GoldStandardCompleteness::kPartialSourceIncompleteTargetIncomplete:
      return "PARTIAL_SOURCE_INCOMPLETE_TARGET_INCOMPLETE";
  }
  return "?";
}

GoldStandardCompleteness parseCompleteness(std::string_view name) {
  for (GoldStandardCompleteness level : kAllCompletenessLevels) {
    if (toString(level) == name) return level;
  }
  throw Error("unknown completeness level '" + std::string(name) + "'");
}

std::string_view toString(Verdict verdict) {
  switch (verdict) {
    case Verdict::kTruePositive:
      return "TP";
    case Verdict::kFalsePositive:
      return "FP";
    case Verdict::kUnjudgeable:
      return "UNJUDGED";
  }
  return "?";
}

Verdict judge(const Correspondence& correspondence, const Alignment& reference,
              GoldStandardCompleteness completeness) {
  if (reference.contains(correspondence.key())) return Verdict::kTruePositive;
  if (completeness == GoldStandardCompleteness::kComplete) {
    return Verdict::kFalsePositive;
  }
  if (isSourceComplete(completeness) && reference.hasSource(correspondence.source)) {
    return Verdict::kFalsePositive;
  }
  if (isTargetComplete(completeness) && reference.hasTarget(correspondence.target)) {
    return Verdict::kFalsePositive;
  }
  return Verdict::kUnjudgeable;
}

}  // namespace kgmatch::align
