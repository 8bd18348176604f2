#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace balise {

inline constexpr std::size_t kAlphabetSize = 1024;

/// 10-bit to 11-bit word substitution.
///
/// The default alphabet is the 1024 numerically smallest 11-bit words with
/// popcount in [4, 7], ascending. A conformant table can be loaded with
/// `from_words()`; entries must be distinct, ascending and below 2^11.
class SubstitutionTable {
 public:
  static const SubstitutionTable& surrogate();
  static SubstitutionTable from_words(std::span<const std::uint16_t> words);

  std::uint16_t substitute(std::uint16_t block) const;
  /// Throws InvalidWord for words outside the alphabet.
  std::uint16_t desubstitute(std::uint16_t word) const;
  bool contains(std::uint16_t word) const noexcept {
    return word < index_.size() && index_[word] >= 0;
  }

  std::span<const std::uint16_t> words() const noexcept { return words_; }

 private:
  SubstitutionTable() = default;

  std::array<std::uint16_t, kAlphabetSize> words_{};
  std::array<std::int16_t, 2048> index_{};
};

}  // namespace balise
