#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgmatch/util/error.hpp"

namespace kgmatch::pipeline {

// Raised for anything that stops a run; names the step that failed.
class StepError : public Error {
 public:
  StepError(std::string step, const std::string& reason, int exit_code = 1)
      : Error("step '" + step + "': " + reason), step_(std::move(step)), exit_code_(exit_code) {}
  const std::string& step() const { return step_; }
  int exitCode() const { return exit_code_; }

 private:
  std::string step_;
  int exit_code_;
};

inline constexpr const char* kDataDirVariable = "KGMATCH_DATA_DIR";

struct RunOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::optional<std::filesystem::path> out_dir;
  // Directory against which relative manifest paths resolve when
  // KGMATCH_DATA_DIR is unset.
  std::filesystem::path base_dir = ".";
};

struct OutputFile {
  std::string role;
  std::filesystem::path path;
};

struct RunReport {
  std::vector<OutputFile> files;
};

std::vector<std::string> knownSteps();

// Checks the manifest shape and step names without touching any file.
// Unknown step names raise StepError with exit code 2.
void validateManifest(const nlohmann::json& manifest);

// Executes the manifest's steps in order and writes the reports into the
// output directory.
RunReport runPipeline(const nlohmann::json& manifest, const RunOptions& options);

nlohmann::json loadManifest(const std::filesystem::path& path);

std::filesystem::path resolveDataPath(const std::string& path,
                                      const std::filesystem::path& base_dir);

}  // namespace kgmatch::pipeline
