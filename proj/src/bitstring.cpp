#include "balise/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

#include "balise/errors.hpp"

namespace balise {

BitString::BitString(std::size_t size, bool value) : bits_(size, value ? 1 : 0) {}

BitString BitString::from_string(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ParseError("bit string may only contain '0' and '1'");
    }
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out;
  out.append_uint(value, width);
  return out;
}

bool BitString::at(std::size_t pos) const {
  if (pos >= bits_.size()) throw std::out_of_range("BitString::at");
  return bits_[pos] != 0;
}

void BitString::set(std::size_t pos, bool value) {
  if (pos >= bits_.size()) throw std::out_of_range("BitString::set");
  bits_[pos] = value ? 1 : 0;
}

void BitString::flip(std::size_t pos) {
  if (pos >= bits_.size()) throw std::out_of_range("BitString::flip");
  bits_[pos] ^= 1;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::append_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw std::invalid_argument("append_uint: width > 64");
  for (std::size_t i = width; i-- > 0;) {
    bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
  }
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > bits_.size() || len > bits_.size() - pos) {
    throw std::out_of_range("BitString::slice");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

std::uint64_t BitString::read_uint(std::size_t pos, std::size_t width) const {
  if (width > 64 || pos > bits_.size() || width > bits_.size() - pos) {
    throw std::out_of_range("BitString::read_uint");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
  return v;
}

void BitString::write_uint(std::size_t pos, std::size_t width, std::uint64_t value) {
  if (width > 64 || pos > bits_.size() || width > bits_.size() - pos) {
    throw std::out_of_range("BitString::write_uint");
  }
  for (std::size_t i = 0; i < width; ++i) {
    bits_[pos + i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
  }
}

BitString BitString::inverted() const {
  BitString out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

BitString BitString::rotated(std::size_t offset) const {
  BitString out = *this;
  if (!bits_.empty()) {
    std::rotate(out.bits_.begin(),
                out.bits_.begin() + static_cast<std::ptrdiff_t>(offset % bits_.size()),
                out.bits_.end());
  }
  return out;
}

BitString BitString::repeated(std::size_t copies) const {
  BitString out;
  out.bits_.reserve(bits_.size() * copies);
  for (std::size_t i = 0; i < copies; ++i) out.append(*this);
  return out;
}

std::vector<std::uint8_t> BitString::pack_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::size_t BitString::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace balise
