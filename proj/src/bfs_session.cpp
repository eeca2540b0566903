#include "bfs_session.hpp"

#include "radiolab/error.hpp"
#include "radiolab/program_util.hpp"
#include "radiolab/toprec.hpp"
#include "radiolab/wire.hpp"

namespace radiolab::topo {

BfsBits BfsBits::parse(std::span<const Bits> blocks) {
  if (blocks.size() < 4 || blocks[0].size() < 3) throw Error(ErrorCode::ProtocolViolation, "bad BFS label");
  BfsBits out;
  out.root = blocks[0][0];
  out.leaf = blocks[0][1];
  out.ack = blocks[0][2];
  out.b = from_binary(blocks[1]);
  out.g = from_binary(blocks[2]);
  out.delta = from_binary(blocks[3]);
  return out;
}

namespace {

std::string tagged(std::uint8_t tag, std::string_view body) {
  std::string m(1, static_cast<char>(tag));
  m.append(body);
  return m;
}

Round phase_length(const BfsBits& bits) { return static_cast<Round>(bits.delta) + 1; }

NodeId read_id(Reader& r) {
  NodeId id(r.varint());
  for (auto& x : id) x = r.varint();
  return id;
}

}  // namespace

void LayeredBroadcast::start_as_root(std::string payload) {
  informed_ = true;
  layer_ = 0;
  payload_ = payload;
  outgoing_ = std::move(payload);
  if (!bits_.leaf) send_at_ = first_ + static_cast<Round>(bits_.b);
}

std::optional<Message> LayeredBroadcast::act(Round round) {
  if (!send_at_ || *send_at_ != round) return std::nullopt;
  send_at_.reset();
  return tagged(tag_, outgoing_);
}

void LayeredBroadcast::observe(Round round, const Observation& obs) {
  if (informed_ || round < first_ || !has_tag(obs, tag_)) return;
  Round rel = round - first_ + 1;
  Round len = phase_length(bits_);
  informed_ = true;
  layer_ = (rel + len - 1) / len;
  payload_ = std::string(obs.message.substr(1));
  outgoing_ = payload_;
  if (!bits_.leaf) send_at_ = first_ + layer_ * len + static_cast<Round>(bits_.b);
}

AckLayered::AckLayered(const BfsBits& bits, std::uint8_t tag, Round first)
    : bits_(bits), tag_(tag), first_(first), run1_(bits, tag, first) {}

void AckLayered::start_as_root(std::string extra) {
  extra_ = std::move(extra);
  id_.clear();
  run1_.start_as_root(encode_id(id_));
  relayed_ = true;
  if (bits_.ack && bits_.leaf) learn_depth(0);
}

void AckLayered::learn_depth(Round depth) {
  if (total_) {
    if (depth != depth_) throw Error(ErrorCode::ProtocolViolation, "conflicting depth");
    return;
  }
  depth_ = depth;
  total_ = depth * (2 * static_cast<Round>(bits_.delta) + 3);
}

bool AckLayered::idle() const { return run1_.idle() && !relay_at_ && !second_at_; }

std::optional<Message> AckLayered::act(Round round) {
  if (relay_at_ && *relay_at_ == round) {
    relay_at_.reset();
    return Writer().u8(static_cast<std::uint8_t>(tag_ + 1)).varint(static_cast<std::uint64_t>(depth_)).str();
  }
  if (second_at_ && *second_at_ == round) {
    second_at_.reset();
    return Writer().u8(static_cast<std::uint8_t>(tag_ + 2)).varint(static_cast<std::uint64_t>(*total_)).bytes(extra_).str();
  }
  return run1_.act(round);
}

void AckLayered::observe(Round round, const Observation& obs) {
  bool was = run1_.informed();
  run1_.observe(round, obs);
  const Round len = phase_length(bits_);
  if (!was && run1_.informed()) {
    Reader r(run1_.payload());
    id_ = read_id(r);
    id_.push_back(bits_.g);
    run1_.set_outgoing(encode_id(id_));
    if (bits_.ack && bits_.leaf) {
      learn_depth(run1_.layer());
      relayed_ = true;
      relay_at_ = first_ + depth_ * len;
    }
  }
  if (bits_.ack && !relayed_ && has_tag(obs, static_cast<std::uint8_t>(tag_ + 1))) {
    Reader r(obs.message);
    r.u8();
    learn_depth(static_cast<Round>(r.varint()));
    relayed_ = true;
    relay_at_ = round + 1;
  }
  if (bits_.root && bits_.ack && has_tag(obs, static_cast<std::uint8_t>(tag_ + 1)) && !second_heard_) {
    Reader r(obs.message);
    r.u8();
    learn_depth(static_cast<Round>(r.varint()));
    second_heard_ = true;
    if (round + 1 != first_ + depth_ * (len + 1)) throw Error(ErrorCode::ProtocolViolation, "relay arrived off schedule");
    second_at_ = round + 1;
  }
  if (!bits_.root && !second_heard_ && has_tag(obs, static_cast<std::uint8_t>(tag_ + 2))) {
    second_heard_ = true;
    Reader r(obs.message);
    r.u8();
    auto total = static_cast<Round>(r.varint());
    extra_ = r.bytes();
    Round per = 2 * static_cast<Round>(bits_.delta) + 3;
    if (total % per != 0) throw Error(ErrorCode::ProtocolViolation, "bad acknowledged length");
    learn_depth(total / per);
    Round start2 = first_ + depth_ * (len + 1);
    Round layer = run1_.layer();
    if (round < start2 + (layer - 1) * len || round >= start2 + layer * len) {
      throw Error(ErrorCode::ProtocolViolation, "second run heard off schedule");
    }
    if (!bits_.leaf) second_at_ = start2 + layer * len + static_cast<Round>(bits_.b);
  }
}

void GatherPhase::configure(Round first, Round depth, Round layer) {
  configured_ = true;
  first_ = first;
  depth_ = depth;
  layer_ = layer;
}

std::optional<Message> GatherPhase::act(Round round) {
  if (!configured_ || sent_ || layer_ == 0) return std::nullopt;
  Round at = first_ + (depth_ - layer_) * static_cast<Round>(bits_.delta) + static_cast<Round>(bits_.g);
  if (round != at) return std::nullopt;
  sent_ = true;
  Writer w;
  w.u8(tag_).varint(items_.size());
  for (const auto& item : items_) w.bytes(item);
  return std::move(w).str();
}

void GatherPhase::observe(Round round, const Observation& obs) {
  if (!configured_ || layer_ >= depth_ || !has_tag(obs, tag_)) return;
  const auto delta = static_cast<Round>(bits_.delta);
  Round lo = first_ + (depth_ - layer_ - 1) * delta;
  if (round < lo || round >= lo + delta) return;
  Reader r(obs.message);
  r.u8();
  for (auto count = r.varint(); count > 0; --count) items_.insert(r.bytes());
}

GatherSession::GatherSession(const BfsBits& bits, Round first, std::uint8_t tag_base)
    : bits_(bits), ack_(bits, tag_base, first), depth_tag_(static_cast<std::uint8_t>(tag_base + 3)),
      main_(bits, static_cast<std::uint8_t>(tag_base + 4)) {}

std::optional<Message> GatherSession::act(Round round) {
  if (auto m = ack_.act(round)) return m;
  if (depth_run_) {
    if (auto m = depth_run_->act(round)) return m;
  }
  return main_.act(round);
}

void GatherSession::observe(Round round, const Observation& obs) {
  ack_.observe(round, obs);
  if (depth_run_) depth_run_->observe(round, obs);
  main_.observe(round, obs);
  progress();
}

void GatherSession::progress() {
  if (!depth_run_ && ack_.knows_length()) {
    Round start = ack_.end() + 1;
    depth_run_.emplace(bits_, depth_tag_, start);
    if (bits_.root) depth_run_->start_as_root(Writer().varint(static_cast<std::uint64_t>(ack_.depth())).str());
  }
  if (!configured_ && depth_run_ && depth_run_->informed()) {
    Reader r(depth_run_->payload());
    auto depth = static_cast<Round>(r.varint());
    if (depth != ack_.depth()) throw Error(ErrorCode::ProtocolViolation, "depth runs disagree");
    configured_ = true;
    Round start = depth_run_->first() + depth * (static_cast<Round>(bits_.delta) + 1);
    main_.configure(start, depth, bits_.root ? 0 : ack_.layer());
  }
}

}  // namespace radiolab::topo
