#include "balise/auth.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>
#include <vector>

#include "balise/errors.hpp"

namespace balise {

Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message) {
  Digest out{};
  unsigned int len = 0;
  const auto* ok = HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(),
                        message.size(), out.data(), &len);
  if (ok == nullptr || len != out.size()) throw Error("HMAC-SHA-256 failed");
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

MasterKey MasterKey::from_hex(std::string_view hex) {
  MasterKey mk;
  if (hex.size() != 2 * mk.bytes.size()) {
    throw ParseError("master key must be 64 hex characters");
  }
  for (std::size_t i = 0; i < mk.bytes.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("master key contains a non-hex character");
    mk.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return mk;
}

std::string MasterKey::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

BaliseKeyPair derive_keys(const MasterKey& mk, std::uint16_t id, std::uint16_t ver) {
  if (id > kMaxBaliseGroupId) throw FormatError("balise identifier exceeds 14 bits");
  BaliseKeyPair keys;
  keys.id = id;
  keys.ver = ver;
  for (std::uint8_t i = 0; i < 2; ++i) {
    const std::array<std::uint8_t, 6> msg = {
        kKdfDomain,
        static_cast<std::uint8_t>(id >> 8),
        static_cast<std::uint8_t>(id & 0xFF),
        static_cast<std::uint8_t>(ver >> 8),
        static_cast<std::uint8_t>(ver & 0xFF),
        i};
    const Digest d = hmac_sha256(mk.bytes, msg);
    auto& k = i == 0 ? keys.k0 : keys.k1;
    std::copy_n(d.begin(), k.size(), k.begin());
  }
  return keys;
}

std::uint16_t compute_tag(const UserData& user, const BaliseKeyPair& keys) {
  std::vector<std::uint8_t> msg;
  msg.push_back(format_of(user.format()).mac_domain_byte());
  const auto packed = user.bits().pack_bytes();
  msg.insert(msg.end(), packed.begin(), packed.end());
  const Digest d = hmac_sha256(keys.k0, msg);
  return static_cast<std::uint16_t>((d[0] << 4) | (d[1] >> 4));
}

ScramblingKey derive_scrambling_key(const BaliseKeyPair& keys, std::uint16_t sb) {
  const std::uint16_t aligned = static_cast<std::uint16_t>((sb & 0x0FFFu) << 4);
  const std::array<std::uint8_t, 3> msg = {kPrfDomain, static_cast<std::uint8_t>(aligned >> 8),
                                           static_cast<std::uint8_t>(aligned & 0xFF)};
  const Digest d = hmac_sha256(keys.k1, msg);
  return ScramblingKey{static_cast<std::uint32_t>(d[0]) << 24 |
                       static_cast<std::uint32_t>(d[1]) << 16 |
                       static_cast<std::uint32_t>(d[2]) << 8 | d[3]};
}

AuthTag generate_tag(const UserData& user, const BaliseKeyPair& keys) {
  const std::uint16_t sb = compute_tag(user, keys);
  return AuthTag{sb, derive_scrambling_key(keys, sb)};
}

Telegram encode_authenticated(const UserData& user, const BaliseKeyPair& keys,
                              const CodecContext& ctx) {
  const AuthTag tag = generate_tag(user, keys);
  return encode(user, tag.sb, tag.key, ctx);
}

UserData verify_and_decode(const BitString& stream, const BaliseKeyPair& keys,
                           const TelegramFormat& format, const CodecContext& ctx) {
  auto decoded = decode_stream(
      stream, format, [&keys](std::uint16_t sb) { return derive_scrambling_key(keys, sb); },
      ctx);
  if (compute_tag(decoded.user, keys) != decoded.sb) {
    throw AuthFailure("authentication tag mismatch for balise " + std::to_string(keys.id));
  }
  return std::move(decoded.user);
}

}  // namespace balise
