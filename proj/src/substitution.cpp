#include "balise/substitution.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "balise/errors.hpp"

namespace balise {

const SubstitutionTable& SubstitutionTable::surrogate() {
  static const SubstitutionTable table = [] {
    std::vector<std::uint16_t> words;
    words.reserve(kAlphabetSize);
    for (unsigned w = 0; w < 2048 && words.size() < kAlphabetSize; ++w) {
      const int weight = std::popcount(w);
      if (weight >= 4 && weight <= 7) words.push_back(static_cast<std::uint16_t>(w));
    }
    return from_words(words);
  }();
  return table;
}

SubstitutionTable SubstitutionTable::from_words(std::span<const std::uint16_t> words) {
  if (words.size() != kAlphabetSize) {
    throw FormatError("substitution table must have 1024 entries, got " +
                      std::to_string(words.size()));
  }
  SubstitutionTable t;
  t.index_.fill(-1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::uint16_t w = words[i];
    if (w >= 2048) throw FormatError("substitution word exceeds 11 bits");
    if (i > 0 && w <= words[i - 1]) {
      throw FormatError("substitution words must be strictly ascending");
    }
    t.words_[i] = w;
    t.index_[w] = static_cast<std::int16_t>(i);
  }
  return t;
}

std::uint16_t SubstitutionTable::substitute(std::uint16_t block) const {
  if (block >= kAlphabetSize) throw std::out_of_range("substitute: block exceeds 10 bits");
  return words_[block];
}

std::uint16_t SubstitutionTable::desubstitute(std::uint16_t word) const {
  if (!contains(word)) {
    throw InvalidWord("11-bit word " + std::to_string(word) + " is not in the alphabet");
  }
  return static_cast<std::uint16_t>(index_[word]);
}

}  // namespace balise
