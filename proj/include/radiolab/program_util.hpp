#pragma once

#include <optional>
#include <vector>

#include "radiolab/error.hpp"
#include "radiolab/labels.hpp"
#include "radiolab/radio.hpp"

namespace radiolab {

inline Action to_action(std::optional<Message> m) {
  return m ? Action::transmit(std::move(*m)) : Action::listen();
}

inline bool flag(const Bits& block) { return block.size() == 1 && block[0]; }

inline bool has_tag(const Observation& obs, std::uint8_t tag) {
  return obs.heard() && !obs.message.empty() && static_cast<std::uint8_t>(obs.message[0]) == tag;
}

// Decodes a label into exactly `count` blocks.
inline std::vector<Bits> split_label(const LabelBits& label, std::size_t count) {
  auto blocks = decode_blocks(label);
  if (blocks.size() != count) {
    throw Error(ErrorCode::ProtocolViolation,
                "expected " + std::to_string(count) + " label blocks, got " + std::to_string(blocks.size()));
  }
  return blocks;
}

}  // namespace radiolab
