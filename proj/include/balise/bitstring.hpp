#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace balise {

/// Ordered binary sequence stored in transmission order.
///
/// Position 0 is the leftmost bit, which for an n-bit telegram is the bit
/// labelled b_{n-1}. Use `label_position()` to translate from labels.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false);

  /// Parses a string of '0'/'1' characters. Throws ParseError otherwise.
  static BitString from_string(std::string_view text);
  /// `width` bits of `value`, most significant bit first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t pos) const noexcept { return bits_[pos] != 0; }
  bool at(std::size_t pos) const;
  void set(std::size_t pos, bool value);
  void flip(std::size_t pos);

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString& other);
  void append_uint(std::uint64_t value, std::size_t width);

  BitString slice(std::size_t pos, std::size_t len) const;
  /// Reads `width` (<= 64) bits starting at `pos` as an MSB-first integer.
  std::uint64_t read_uint(std::size_t pos, std::size_t width) const;
  void write_uint(std::size_t pos, std::size_t width, std::uint64_t value);

  BitString inverted() const;
  /// Cyclic rotation: the result starts at `offset` and wraps around.
  BitString rotated(std::size_t offset) const;
  BitString repeated(std::size_t copies) const;

  /// Packs MSB-first into bytes, zero-padding the final byte.
  std::vector<std::uint8_t> pack_bytes() const;
  std::string to_string() const;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t popcount() const noexcept;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Position of the bit labelled b_{label} in an n-bit sequence.
constexpr std::size_t label_position(std::size_t n, std::size_t label) noexcept {
  return n - 1 - label;
}

}  // namespace balise
