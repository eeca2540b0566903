#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace radiolab {

// Ordered bit string. Printed most significant (first) bit first.
class Bits {
 public:
  Bits() = default;

  static Bits from_string(std::string_view text);
  // Inverse of to_hex for a known bit length.
  static Bits from_hex(std::string_view hex, std::size_t bit_count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const Bits& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
  Bits slice(std::size_t pos, std::size_t count) const;

  std::string to_string() const;
  // Left-packed, zero padded to a whole byte, lowercase.
  std::string to_hex() const;

  friend bool operator==(const Bits&, const Bits&) = default;
  friend bool operator<(const Bits& a, const Bits& b) { return a.bits_ < b.bits_; }

 private:
  std::vector<bool> bits_;
};

// Shortest big-endian representation; "0" for zero.
Bits to_binary(std::uint64_t value);
// Big-endian with leading zeros. Throws InvalidParams if value needs more bits.
Bits to_binary(std::uint64_t value, std::size_t width);
// Throws InvalidParams on empty input or more than 64 bits.
std::uint64_t from_binary(const Bits& bits);

// Number of bits in the binary representation of value, 0 for 0; equal to
// ceil(log2(value + 1)).
std::size_t bit_width_of(std::uint64_t value);
// floor(log2(value)) for value >= 1.
std::size_t floor_log2(std::uint64_t value);

}  // namespace radiolab
