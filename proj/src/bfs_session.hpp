#pragma once

// Node-side pieces shared by the layered broadcast, acknowledgement and
// gathering programs.

#include <optional>
#include <set>
#include <span>
#include <string>

#include "radiolab/bfs_tree.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::topo {

struct BfsBits {
  bool root = false;
  bool leaf = false;
  bool ack = false;
  std::uint64_t b = 0;
  std::uint64_t g = 0;
  std::uint64_t delta = 0;

  // Reads [root leaf ack ...][b][g][delta] from the front of `blocks`.
  static BfsBits parse(std::span<const Bits> blocks);
};

// One layered broadcast with a first round every node knows. A node at
// layer l forwards once, in relative round l * (delta + 1) + b + 1.
class LayeredBroadcast {
 public:
  LayeredBroadcast(const BfsBits& bits, std::uint8_t tag, Round first) : bits_(bits), tag_(tag), first_(first) {}

  void start_as_root(std::string payload);
  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);
  void set_outgoing(std::string payload) { outgoing_ = std::move(payload); }

  bool informed() const { return informed_; }
  Round layer() const { return layer_; }
  Round first() const { return first_; }
  const std::string& payload() const { return payload_; }
  bool idle() const { return !send_at_; }

 private:
  BfsBits bits_;
  std::uint8_t tag_;
  Round first_;
  bool informed_ = false;
  Round layer_ = 0;
  std::string payload_;
  std::string outgoing_;
  std::optional<Round> send_at_;
};

// Layered broadcast carrying ids, the relay of the depth up the ack path,
// then a second layered broadcast of the total length T and `extra`.
class AckLayered {
 public:
  AckLayered(const BfsBits& bits, std::uint8_t tag, Round first);

  // Root only, before the first round.
  void start_as_root(std::string extra);
  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);

  bool knows_length() const { return total_.has_value(); }
  Round length() const { return *total_; }
  Round depth() const { return depth_; }
  Round end() const { return first_ + *total_ - 1; }
  Round layer() const { return run1_.layer(); }
  const NodeId& id() const { return id_; }
  const std::string& extra() const { return extra_; }
  bool idle() const;

 private:
  void learn_depth(Round depth);

  BfsBits bits_;
  std::uint8_t tag_;
  Round first_;
  LayeredBroadcast run1_;
  NodeId id_;
  Round depth_ = 0;
  std::optional<Round> total_;
  std::string extra_;
  bool relayed_ = false;
  std::optional<Round> relay_at_;
  std::optional<Round> second_at_;
  bool second_heard_ = false;
};

// Main part of gathering: depth phases of delta rounds; layer depth - i
// sends in round g + 1 of phase i everything it has. A node keeps whatever
// it hears while the layer below it sends.
class GatherPhase {
 public:
  GatherPhase(const BfsBits& bits, std::uint8_t tag) : bits_(bits), tag_(tag) {}

  void configure(Round first, Round depth, Round layer);
  void add(std::string item) { items_.insert(std::move(item)); }
  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);
  const std::set<std::string>& items() const { return items_; }
  // Last round of the main part.
  Round end() const { return first_ + depth_ * static_cast<Round>(bits_.delta) - 1; }
  bool idle() const { return !configured_ || sent_ || layer_ == 0; }

 private:
  BfsBits bits_;
  std::uint8_t tag_;
  bool configured_ = false;
  bool sent_ = false;
  Round first_ = 0;
  Round depth_ = 0;
  Round layer_ = 0;
  std::set<std::string> items_;
};

// Full gathering from a known first round: acknowledgement, a layered
// broadcast of the depth, then the main part.
class GatherSession {
 public:
  GatherSession(const BfsBits& bits, Round first, std::uint8_t tag_base);

  void start_as_root() {
    ack_.start_as_root("");
    progress();
  }
  void add(std::string item) { main_.add(std::move(item)); }
  std::optional<Message> act(Round round);
  void observe(Round round, const Observation& obs);
  bool done(Round round) const { return configured_ && round >= main_.end(); }
  bool configured() const { return configured_; }
  Round end() const { return main_.end(); }
  const AckLayered& ack() const { return ack_; }
  const std::set<std::string>& items() const { return main_.items(); }
  bool idle() const { return ack_.idle() && (!depth_run_ || depth_run_->idle()) && main_.idle(); }

 private:
  void progress();

  BfsBits bits_;
  AckLayered ack_;
  std::uint8_t depth_tag_;
  std::optional<LayeredBroadcast> depth_run_;
  GatherPhase main_;
  bool configured_ = false;
};

}  // namespace radiolab::topo
