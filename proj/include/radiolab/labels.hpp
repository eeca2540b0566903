#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "radiolab/bits.hpp"

namespace radiolab {

using LabelBits = Bits;

// 1 -> "10", 0 -> "01", "00" between consecutive blocks.
LabelBits encode_blocks(std::span<const Bits> blocks);
LabelBits encode_blocks(std::initializer_list<Bits> blocks);
// Throws MalformedCodeword on odd length or a "11" pair.
std::vector<Bits> decode_blocks(const LabelBits& label);

struct SchemeBundle {
  std::string scheme;
  std::vector<LabelBits> labels;
  // Oracle-side data for tests and sidecar files. Node programs never see it.
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t max_label_bits() const;
};

// "node<TAB>bitlen<TAB>hex" per line.
void write_label_dump(std::ostream& out, std::span<const LabelBits> labels);
std::vector<LabelBits> read_label_dump(std::istream& in);

nlohmann::json bundle_sidecar(const SchemeBundle& bundle);

}  // namespace radiolab
