#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kgmatch/alignment/alignment.hpp"
#include "kgmatch/rdf/graph.hpp"
#include "kgmatch/util/random.hpp"

namespace kgmatch::testing {

rdf::Graph graph(std::string_view ntriples);

// Up to max_size correspondences between s0..s{sources-1} and
// t0..t{targets-1}. Confidences and extension values lie on a 1/1000 grid,
// so they survive the 10-digit decimal form of the alignment format.
align::Alignment randomAlignment(Rng& rng, std::size_t max_size, std::size_t sources,
                                 std::size_t targets, bool with_extensions);

// Random directed multi-predicate graph whose shape depends only on
// `seed`; IRIs are <ns>n<i> for nodes and <ns>p<j> for predicates.
std::string twinGraph(std::uint64_t seed, std::size_t nodes, std::size_t out_degree,
                      std::size_t predicates, const std::string& ns);

// Two labelled instance graphs describing the same entities, plus decoy
// target entities that share labels with source entities.
struct KgPair {
  std::string source;
  std::string target;
  align::Alignment reference;
};
KgPair kgPair(std::uint64_t seed, std::size_t entities);

// Writes source.nt, target.nt and reference.rdf into `dir`.
void writeKgPair(const KgPair& pair, const std::filesystem::path& dir);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void writeText(const std::filesystem::path& path, const std::string& text);
std::string readText(const std::filesystem::path& path);

}  // namespace kgmatch::testing
