#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radiolab/executor.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::exec {

struct BroadcastHeader {
  Round relative_round;
  Round sender_level;
};

// Header of a broadcast-run data message carrying `tag`, if msg is one.
std::optional<BroadcastHeader> parse_broadcast(std::string_view msg, std::uint8_t tag);

// Node-side state of one stage-based broadcast run. Embedded by the node
// programs; every run uses its own message tag. Round numbers passed in are
// global; relative round 1 is the first round of the run.
class BroadcastSession {
 public:
  BroadcastSession(ExecBits bits, std::uint8_t tag) : bits_(bits), tag_(tag) {}

  void start_as_source(Round first_round, std::string payload);

  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);

  bool informed() const { return informed_; }
  bool is_source() const { return source_; }
  // Relative round of first reception; 0 for a source.
  Round level() const { return level_; }
  Round parent_level() const { return parent_level_; }
  Round first_round() const { return first_round_; }
  Round to_global(Round relative) const { return first_round_ + relative - 1; }
  const std::string& payload() const { return payload_; }
  bool in_dom() const { return in_dom_; }
  // Whether this node sent the broadcast message in relative round r.
  bool sent_broadcast_at(Round relative) const;
  bool idle() const;

 private:
  void end_stage(Round stage);

  ExecBits bits_;
  std::uint8_t tag_;
  bool informed_ = false;
  bool source_ = false;
  Round first_round_ = 0;
  Round level_ = 0;
  Round parent_level_ = 0;
  Round informed_stage_ = -1;
  std::string payload_;
  bool in_dom_ = false;
  bool feedback_due_ = false;
  bool join_pending_ = false;
  bool got_stay_ = false;
  bool got_go_ = false;
  std::vector<Round> sent_;
};

struct AckBits {
  ExecBits exec;
  bool path = false;
  bool end = false;

  Bits to_bits() const;
  // Reads the first five bits.
  static AckBits from_bits(const Bits& bits);
};

// Acknowledged broadcast: a first broadcast run, a relay along the marked
// path from its deepest node back to the source carrying the run length t
// and the maximum level L, then a second run spreading (t, L). Everything
// finishes within 3t rounds of the start.
class AckSession {
 public:
  AckSession(AckBits bits, std::uint8_t tag_first, std::uint8_t tag_relay, std::uint8_t tag_second);

  void start_as_source(Round first_round, std::string payload);

  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);

  const BroadcastSession& first() const { return first_; }
  bool knows_length() const { return t_.has_value(); }
  // Length t of the first run and its maximum level L.
  Round length() const { return *t_; }
  Round max_level() const { return max_level_; }
  // Global round in which the whole acknowledged broadcast ends.
  Round last_round() const { return first_.to_global(3 * *t_); }
  bool idle() const;

 private:
  void learn(Round t, Round max_level);
  Message relay_message(Round sender_parent_level) const;

  AckBits bits_;
  std::uint8_t tag_relay_;
  BroadcastSession first_;
  BroadcastSession second_;
  std::optional<Round> t_;
  Round max_level_ = 0;
  std::optional<Round> relay_at_;
  bool relayed_ = false;
};

}  // namespace radiolab::exec
