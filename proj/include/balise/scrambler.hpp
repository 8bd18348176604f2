#pragma once

#include <cstdint>

#include "balise/bitstring.hpp"

namespace balise {

/// 32-bit LFSR seed for the data scrambler.
struct ScramblingKey {
  std::uint32_t value = 0;

  friend bool operator==(ScramblingKey, ScramblingKey) = default;
};

/// Non-cryptographic sb -> S expansion used by unauthenticated telegrams:
/// S = (sb << 20) ^ (sb << 8) ^ sb ^ 0x5A5A5A5A, with S = 0 mapped to 1.
ScramblingKey derive_scrambling_key_legacy(std::uint16_t sb);

/// Fibonacci LFSR x^32 + x^22 + x^2 + x + 1.
///
/// The register shifts left; the output is the most significant stage and
/// the feedback enters at the least significant stage. The first 32 output
/// bits therefore reproduce the seed MSB-first.
class Keystream {
 public:
  explicit Keystream(ScramblingKey key) noexcept : state_(key.value == 0 ? 1u : key.value) {}

  bool next() noexcept {
    const std::uint32_t s = state_;
    const bool out = (s >> 31) & 1u;
    const std::uint32_t feedback = ((s >> 31) ^ (s >> 21) ^ (s >> 1) ^ s) & 1u;
    state_ = (s << 1) | feedback;
    return out;
  }

  std::uint32_t state() const noexcept { return state_; }

 private:
  std::uint32_t state_;
};

/// XORs `data` with the keystream for `key`. Self-inverse.
BitString scramble(const BitString& data, ScramblingKey key);
inline BitString descramble(const BitString& data, ScramblingKey key) { return scramble(data, key); }

}  // namespace balise
