#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radiolab/generators.hpp"
#include "radiolab/graph.hpp"

namespace radiolab {

// Families: path, cycle, star, grid, gnp-connected, tree, lbG, lbH.
struct GenParams {
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t delta = 0;
  std::uint64_t seed = 1;
  // grid only; 0 picks the most square shape with rows * cols = n
  std::size_t rows = 0;
  std::size_t cols = 0;
};

const std::vector<std::string>& family_names();

// Throws InvalidParams for an unknown family, otherwise whatever the
// generator throws.
Graph generate(const GenParams& params);
// Also returns the component partition for lbG / lbH.
std::pair<Graph, std::optional<LBFamilyDescriptor>> generate_with_partition(const GenParams& params);

struct CorpusEntry {
  std::string id;
  GenParams params;
};

// One entry per line: "<id> <family> key=value ...", keys n p delta seed
// rows cols. Blank lines and lines starting with # are skipped.
std::vector<CorpusEntry> read_manifest(std::istream& in);
std::vector<CorpusEntry> read_manifest_file(const std::string& path);

}  // namespace radiolab
