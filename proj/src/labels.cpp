#include "radiolab/labels.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "radiolab/error.hpp"

namespace radiolab {

LabelBits encode_blocks(std::span<const Bits> blocks) {
  LabelBits out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) {
      out.push_back(false);
      out.push_back(false);
    }
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      bool bit = blocks[i][j];
      out.push_back(bit);
      out.push_back(!bit);
    }
  }
  return out;
}

LabelBits encode_blocks(std::initializer_list<Bits> blocks) {
  return encode_blocks(std::span<const Bits>(blocks.begin(), blocks.size()));
}

std::vector<Bits> decode_blocks(const LabelBits& label) {
  if (label.size() % 2 != 0) throw Error(ErrorCode::MalformedCodeword, "odd label length " + std::to_string(label.size()));
  std::vector<Bits> blocks(1);
  for (std::size_t i = 0; i < label.size(); i += 2) {
    bool hi = label[i], lo = label[i + 1];
    if (hi && lo) throw Error(ErrorCode::MalformedCodeword, "pair 11 at bit " + std::to_string(i));
    if (!hi && !lo) {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(hi);
    }
  }
  return blocks;
}

std::size_t SchemeBundle::max_label_bits() const {
  std::size_t best = 0;
  for (const auto& l : labels) best = std::max(best, l.size());
  return best;
}

void write_label_dump(std::ostream& out, std::span<const LabelBits> labels) {
  for (std::size_t v = 0; v < labels.size(); ++v) {
    out << v << '\t' << labels[v].size() << '\t' << labels[v].to_hex() << '\n';
  }
}

std::vector<LabelBits> read_label_dump(std::istream& in) {
  std::vector<LabelBits> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t node = 0, len = 0;
    std::string hex;
    if (!(row >> node >> len)) throw Error(ErrorCode::ParseError, "bad label dump line: " + line);
    row >> hex;
    if (node != labels.size()) throw Error(ErrorCode::ParseError, "label dump out of order at node " + std::to_string(node));
    labels.push_back(Bits::from_hex(hex, len));
  }
  return labels;
}

nlohmann::json bundle_sidecar(const SchemeBundle& bundle) {
  return {{"scheme", bundle.scheme},
          {"max_label_bits", bundle.max_label_bits()},
          {"metadata", bundle.metadata}};
}

}  // namespace radiolab
