#include "radiolab/wire.hpp"

#include "radiolab/error.hpp"

namespace radiolab {

Writer& Writer::u8(std::uint8_t value) {
  buf_.push_back(static_cast<char>(value));
  return *this;
}

Writer& Writer::varint(std::uint64_t value) {
  while (value >= 0x80) {
    buf_.push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  buf_.push_back(static_cast<char>(value));
  return *this;
}

Writer& Writer::bytes(std::string_view data) {
  varint(data.size());
  buf_.append(data);
  return *this;
}

Writer& Writer::bits(const Bits& data) {
  varint(data.size());
  std::string packed = data.to_hex();
  buf_.append(packed);
  return *this;
}

std::uint8_t Reader::u8() {
  if (pos_ >= data_.size()) throw Error(ErrorCode::ProtocolViolation, "truncated message");
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint64_t Reader::varint() {
  std::uint64_t value = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    std::uint8_t byte = u8();
    value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return value;
  }
  throw Error(ErrorCode::ProtocolViolation, "varint too long");
}

std::string Reader::bytes() {
  std::uint64_t len = varint();
  if (len > data_.size() - pos_) throw Error(ErrorCode::ProtocolViolation, "truncated byte field");
  std::string out(data_.substr(pos_, len));
  pos_ += len;
  return out;
}

Bits Reader::bits() {
  std::uint64_t len = varint();
  std::size_t hex_len = (len + 7) / 8 * 2;
  if (hex_len > data_.size() - pos_) throw Error(ErrorCode::ProtocolViolation, "truncated bit field");
  Bits out = Bits::from_hex(data_.substr(pos_, hex_len), len);
  pos_ += hex_len;
  return out;
}

}  // namespace radiolab
