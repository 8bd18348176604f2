#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "balise/codec.hpp"

namespace balise {

using Digest = std::array<std::uint8_t, 32>;
using Key128 = std::array<std::uint8_t, 16>;

/// HMAC-SHA-256.
Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

// Leading message bytes that keep the three HMAC uses apart. The MAC input
// starts with the format byte (0x01 long, 0x02 short) instead.
inline constexpr std::uint8_t kKdfDomain = 0x4B;  // 'K'
inline constexpr std::uint8_t kPrfDomain = 0x53;  // 'S'

struct MasterKey {
  std::array<std::uint8_t, 32> bytes{};

  /// 64 hex characters. Throws ParseError.
  static MasterKey from_hex(std::string_view hex);
  std::string to_hex() const;

  friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

/// Per-balise key pair. k0 keys the tag MAC, k1 keys the scrambling-key PRF.
struct BaliseKeyPair {
  Key128 k0{};
  Key128 k1{};
  std::uint16_t id = 0;
  std::uint16_t ver = 0;
};

/// k_i = first 128 bits of HMAC(mk, 0x4B || id:be16 || ver:be16 || i).
/// Throws FormatError when `id` does not fit 14 bits.
BaliseKeyPair derive_keys(const MasterKey& mk, std::uint16_t id, std::uint16_t ver = 0);

struct AuthTag {
  std::uint16_t sb = 0;  // 12-bit tag, doubles as the telegram's scrambling bits
  ScramblingKey key;     // 32-bit LFSR seed

  friend bool operator==(const AuthTag&, const AuthTag&) = default;
};

/// First 12 bits of HMAC(k0, format byte || user bits packed MSB-first).
std::uint16_t compute_tag(const UserData& user, const BaliseKeyPair& keys);

/// First 32 bits of HMAC(k1, 0x53 || sb left-aligned in two bytes).
ScramblingKey derive_scrambling_key(const BaliseKeyPair& keys, std::uint16_t sb);

AuthTag generate_tag(const UserData& user, const BaliseKeyPair& keys);

/// Telegram whose sb is the tag and whose data is scrambled under the PRF key.
Telegram encode_authenticated(const UserData& user, const BaliseKeyPair& keys,
                              const CodecContext& ctx = {});

/// Decodes with S' = PRF(k1, sb), then recomputes the tag over the recovered
/// user data. Throws AuthFailure on a tag mismatch, NoTelegramFound or
/// ControlBitError when the stream does not yield a telegram.
UserData verify_and_decode(const BitString& stream, const BaliseKeyPair& keys,
                           const TelegramFormat& format, const CodecContext& ctx = {});

}  // namespace balise
