#include "radiolab/bits.hpp"

#include <bit>

#include "radiolab/error.hpp"

namespace radiolab {

Bits Bits::from_string(std::string_view text) {
  Bits b;
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidParams, "not a bit string: " + std::string(text));
    b.push_back(c == '1');
  }
  return b;
}

Bits Bits::from_hex(std::string_view hex, std::size_t bit_count) {
  if (hex.size() != (bit_count + 7) / 8 * 2) throw Error(ErrorCode::ParseError, "hex length does not match bit count");
  Bits b;
  for (std::size_t i = 0; i < bit_count; ++i) {
    char c = hex[i / 4];
    int nibble;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
    else throw Error(ErrorCode::ParseError, "bad hex digit");
    b.push_back((nibble >> (3 - i % 4)) & 1);
  }
  return b;
}

Bits Bits::slice(std::size_t pos, std::size_t count) const {
  if (pos + count > bits_.size()) throw Error(ErrorCode::IndexOutOfRange, "bit slice out of range");
  Bits out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return out;
}

std::string Bits::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string Bits::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  std::size_t bytes = (bits_.size() + 7) / 8;
  for (std::size_t byte = 0; byte < bytes; ++byte) {
    unsigned value = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      std::size_t idx = byte * 8 + i;
      value = (value << 1) | (idx < bits_.size() && bits_[idx] ? 1u : 0u);
    }
    s.push_back(kDigits[value >> 4]);
    s.push_back(kDigits[value & 15]);
  }
  return s;
}

std::size_t bit_width_of(std::uint64_t value) { return static_cast<std::size_t>(std::bit_width(value)); }

std::size_t floor_log2(std::uint64_t value) {
  if (value == 0) throw Error(ErrorCode::InvalidParams, "log of zero");
  return bit_width_of(value) - 1;
}

Bits to_binary(std::uint64_t value) { return to_binary(value, value == 0 ? 1 : bit_width_of(value)); }

Bits to_binary(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw Error(ErrorCode::InvalidParams, std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  }
  Bits b;
  for (std::size_t i = width; i-- > 0;) b.push_back(i < 64 && ((value >> i) & 1));
  return b;
}

std::uint64_t from_binary(const Bits& bits) {
  if (bits.empty() || bits.size() > 64) throw Error(ErrorCode::InvalidParams, "cannot read integer from " + std::to_string(bits.size()) + " bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) v = (v << 1) | (bits[i] ? 1 : 0);
  return v;
}

}  // namespace radiolab
