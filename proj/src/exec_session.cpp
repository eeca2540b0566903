#include "radiolab/exec_session.hpp"

#include <algorithm>

#include "radiolab/error.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::exec {

namespace {

constexpr std::uint8_t kBroadcast = 0;
constexpr std::uint8_t kFeedback = 1;

}  // namespace

std::optional<BroadcastHeader> parse_broadcast(std::string_view msg, std::uint8_t tag) {
  if (msg.size() < 2 || static_cast<std::uint8_t>(msg[0]) != tag || msg[1] != kBroadcast) return std::nullopt;
  Reader r(msg.substr(2));
  auto rel = static_cast<Round>(r.varint());
  auto level = static_cast<Round>(r.varint());
  return BroadcastHeader{rel, level};
}

void BroadcastSession::start_as_source(Round first_round, std::string payload) {
  informed_ = true;
  source_ = true;
  first_round_ = first_round;
  level_ = 0;
  payload_ = std::move(payload);
  in_dom_ = bits_.join;
}

bool BroadcastSession::sent_broadcast_at(Round relative) const {
  return std::find(sent_.begin(), sent_.end(), relative) != sent_.end();
}

bool BroadcastSession::idle() const { return !informed_ || (!in_dom_ && !feedback_due_ && !join_pending_); }

std::optional<Message> BroadcastSession::act(Round round) {
  if (!informed_) return std::nullopt;
  Round rel = round - first_round_ + 1;
  if (rel < 1) return std::nullopt;
  Round pos = (rel - 1) % 3;
  auto broadcast = [&] {
    sent_.push_back(rel);
    return Writer().u8(tag_).u8(kBroadcast).varint(static_cast<std::uint64_t>(rel)).varint(static_cast<std::uint64_t>(level_)).bytes(payload_).str();
  };
  if (pos == 0 && in_dom_) return broadcast();
  if (pos == 1 && feedback_due_) {
    feedback_due_ = false;
    return Writer().u8(tag_).u8(kFeedback).u8(static_cast<std::uint8_t>(bits_.stay | (bits_.go << 1))).str();
  }
  if (pos == 2 && in_dom_ && got_go_) return broadcast();
  return std::nullopt;
}

void BroadcastSession::observe(Round round, const Observation& obs) {
  if (obs.heard() && !obs.message.empty() && static_cast<std::uint8_t>(obs.message[0]) == tag_) {
    Reader r(obs.message);
    r.u8();
    std::uint8_t kind = r.u8();
    if (kind == kBroadcast && !informed_) {
      auto rel = static_cast<Round>(r.varint());
      auto sender_level = static_cast<Round>(r.varint());
      informed_ = true;
      first_round_ = round - rel + 1;
      level_ = rel;
      parent_level_ = sender_level;
      payload_ = r.bytes();
      informed_stage_ = (rel - 1) / 3;
      feedback_due_ = (rel - 1) % 3 == 0 && (bits_.stay || bits_.go);
      join_pending_ = bits_.join;
    } else if (kind == kFeedback && informed_ && in_dom_) {
      Round rel = round - first_round_ + 1;
      if (rel >= 1 && (rel - 1) % 3 == 1) {
        std::uint8_t flags = r.u8();
        got_stay_ = flags & 1;
        got_go_ = (flags >> 1) & 1;
      }
    }
  }
  if (!informed_) return;
  Round rel = round - first_round_ + 1;
  if (rel >= 1 && rel % 3 == 0) end_stage((rel - 1) / 3);
}

void BroadcastSession::end_stage(Round stage) {
  bool newly = !source_ && informed_stage_ == stage;
  in_dom_ = (in_dom_ && got_stay_) || (newly && bits_.join);
  if (newly) join_pending_ = false;
  got_stay_ = got_go_ = false;
}

Bits AckBits::to_bits() const {
  Bits b = exec.to_bits();
  b.push_back(path);
  b.push_back(end);
  return b;
}

AckBits AckBits::from_bits(const Bits& bits) {
  if (bits.size() < 5) throw Error(ErrorCode::ProtocolViolation, "acknowledged-broadcast label needs 5 bits");
  return {ExecBits::from_bits(bits), bits[3], bits[4]};
}

AckSession::AckSession(AckBits bits, std::uint8_t tag_first, std::uint8_t tag_relay, std::uint8_t tag_second)
    : bits_(bits), tag_relay_(tag_relay), first_(bits.exec, tag_first), second_(bits.exec, tag_second) {}

void AckSession::start_as_source(Round first_round, std::string payload) {
  first_.start_as_source(first_round, std::move(payload));
  if (bits_.end) learn(0, 0);
}

void AckSession::learn(Round t, Round max_level) {
  if (t_) return;
  t_ = t;
  max_level_ = max_level;
}

Message AckSession::relay_message(Round sender_parent_level) const {
  return Writer().u8(tag_relay_).varint(static_cast<std::uint64_t>(*t_)).varint(static_cast<std::uint64_t>(max_level_)).varint(static_cast<std::uint64_t>(sender_parent_level)).str();
}

bool AckSession::idle() const { return first_.idle() && second_.idle() && !relay_at_; }

std::optional<Message> AckSession::act(Round round) {
  if (relay_at_ && *relay_at_ == round) {
    relay_at_.reset();
    relayed_ = true;
    return relay_message(first_.parent_level());
  }
  if (auto m = first_.act(round)) return m;
  return second_.act(round);
}

void AckSession::observe(Round round, const Observation& obs) {
  bool was_informed = first_.informed();
  first_.observe(round, obs);
  second_.observe(round, obs);

  if (!was_informed && first_.informed() && bits_.end) {
    Round level = first_.level();
    Round t = 3 * ((level + 2) / 3);
    learn(t, level);
    relay_at_ = first_.to_global(t + 1);
    relayed_ = false;
  }
  if (obs.heard() && !obs.message.empty() && static_cast<std::uint8_t>(obs.message[0]) == tag_relay_ && bits_.path &&
      first_.informed() && !relayed_ && !relay_at_) {
    Reader r(obs.message);
    r.u8();
    auto t = static_cast<Round>(r.varint());
    auto top = static_cast<Round>(r.varint());
    auto addressed_level = static_cast<Round>(r.varint());
    if (addressed_level == first_.level()) {
      learn(t, top);
      if (first_.is_source()) {
        relayed_ = true;
        Writer w;
        w.varint(static_cast<std::uint64_t>(t)).varint(static_cast<std::uint64_t>(top));
        second_.start_as_source(round + 1, std::move(w).str());
      } else {
        relay_at_ = round + 1;
      }
    }
  }
  if (second_.informed() && !second_.is_source() && !t_) {
    Reader r(second_.payload());
    auto t = static_cast<Round>(r.varint());
    auto top = static_cast<Round>(r.varint());
    learn(t, top);
  }
}

}  // namespace radiolab::exec
