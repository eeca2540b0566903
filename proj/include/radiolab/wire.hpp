#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "radiolab/bits.hpp"

namespace radiolab {

// Byte framing for radio messages. Readers throw ProtocolViolation on
// truncated input.
class Writer {
 public:
  Writer& u8(std::uint8_t value);
  Writer& varint(std::uint64_t value);
  Writer& bytes(std::string_view data);
  Writer& bits(const Bits& data);

  const std::string& str() const& { return buf_; }
  std::string str() && { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8();
  std::uint64_t varint();
  std::string bytes();
  Bits bits();
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace radiolab
