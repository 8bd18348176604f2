#include <doctest.h>

#include <chrono>
#include <random>
#include <set>

#include "balise/auth.hpp"
#include "balise/errors.hpp"
#include "test_support.hpp"

using namespace balise;

namespace {

std::string hex(const Key128& k) {
  static constexpr char d[] = "0123456789abcdef";
  std::string s;
  for (auto b : k) {
    s.push_back(d[b >> 4]);
    s.push_back(d[b & 15]);
  }
  return s;
}

const MasterKey kMk = MasterKey::from_hex(testing::kTestMasterKeyHex);

}  // namespace

// Expected values below come from Python's hmac/hashlib, computed outside
// this code base.
TEST_CASE("key derivation vectors") {
  const auto k = derive_keys(kMk, 5, 0);
  CHECK(hex(k.k0) == "f16cf835f55a096e7f1f05e33b6fdab2");
  CHECK(hex(k.k1) == "080bae8359f1bf3b774786c7e590df58");
  CHECK(hex(derive_keys(kMk, 5, 1).k0) == "26acf55c507db47d56c1ed4e160313f1");
}

TEST_CASE("tag and PRF vectors for both formats") {
  const auto keys = derive_keys(kMk, 5, 0);
  const auto short_tag = generate_tag(UserData::build(FormatKind::Short, 5, -64000), keys);
  CHECK(short_tag.sb == 0x32C);
  CHECK(short_tag.key.value == 0x3CD911B3u);
  const auto long_tag = generate_tag(UserData::build(FormatKind::Long, 5, -64000), keys);
  CHECK(long_tag.sb == 0x986);
  CHECK(long_tag.key.value == 0x018D32EEu);
}

TEST_CASE("hmac_sha256 matches RFC 4231 test case 2") {
  const std::string key = "Jefe";
  const std::string msg = "what do ya want for nothing?";
  const auto d = hmac_sha256(
      std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size()),
      std::span(reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()));
  CHECK(d[0] == 0x5b);
  CHECK(d[1] == 0xdc);
  CHECK(d[31] == 0x43);
}

TEST_CASE("key pairs are deterministic and separated") {
  const auto a = derive_keys(kMk, 7, 0);
  const auto b = derive_keys(kMk, 7, 0);
  CHECK(a.k0 == b.k0);
  CHECK(a.k1 == b.k1);
  CHECK(a.k0 != a.k1);
  CHECK(derive_keys(kMk, 8, 0).k0 != a.k0);
  const auto v1 = derive_keys(kMk, 7, 1);
  const std::set<Key128> all{a.k0, a.k1, v1.k0, v1.k1};
  CHECK(all.size() == 4);
  CHECK_THROWS_AS(derive_keys(kMk, 1u << 14, 0), FormatError);
}

TEST_CASE("master key hex parsing") {
  CHECK(kMk.to_hex() == testing::kTestMasterKeyHex);
  CHECK_THROWS_AS(MasterKey::from_hex("abcd"), ParseError);
  CHECK_THROWS_AS(MasterKey::from_hex(std::string(64, 'g')), ParseError);
}

TEST_CASE("authenticated telegrams round trip and keep legacy length") {
  std::mt19937_64 rng(11);
  for (auto kind : {FormatKind::Long, FormatKind::Short}) {
    const auto& fmt = format_of(kind);
    const auto keys = derive_keys(kMk, 42, 3);
    for (int i = 0; i < 20; ++i) {
      const auto user = testing::random_user(rng, kind);
      const auto t = encode_authenticated(user, keys);
      CHECK(t.bits().size() == fmt.n);
      CHECK(t.scrambling_bits() == generate_tag(user, keys).sb);
      CHECK(verify_and_decode(passage_stream(t, rng() % fmt.n), keys, fmt) == user);
    }
  }
}

TEST_CASE("legacy re-encoding with the old sb fails verification") {
  const auto keys = derive_keys(kMk, 1, 0);
  const auto honest = UserData::build(FormatKind::Long, 1, -100000);
  const auto t = encode_authenticated(honest, keys);
  const auto forged = encode_legacy(honest.with_reported_location(-1000), t.scrambling_bits());
  CHECK_THROWS_AS(verify_and_decode(passage_stream(forged, 0), keys, kLongFormat), AuthFailure);
}

TEST_CASE("telegram is rejected under another balise's keys") {
  const auto user = UserData::build(FormatKind::Short, 3, -36000);
  const auto t = encode_authenticated(user, derive_keys(kMk, 3, 0));
  CHECK_THROWS_AS(verify_and_decode(passage_stream(t, 0), derive_keys(kMk, 4, 0), kShortFormat),
                  AuthFailure);
  CHECK_THROWS_AS(verify_and_decode(passage_stream(t, 0), derive_keys(kMk, 3, 1), kShortFormat),
                  AuthFailure);
}

TEST_CASE("corrupted authenticated stream reports NoTelegramFound") {
  const auto keys = derive_keys(kMk, 3, 0);
  auto bits = encode_authenticated(UserData::build(FormatKind::Short, 3, -4000), keys).bits();
  bits.flip(17);
  CHECK_THROWS_AS(verify_and_decode(bits.repeated(3), keys, kShortFormat), NoTelegramFound);
}

TEST_CASE("the format byte binds tags to the telegram length") {
  const auto keys = derive_keys(kMk, 9, 0);
  BitString payload(210);
  payload.write_uint(0, 32, 0xDEADBEEF);
  BitString padded = payload;
  padded.append(BitString(620));
  CHECK(compute_tag(UserData(FormatKind::Short, payload), keys) !=
        compute_tag(UserData(FormatKind::Long, padded), keys));
}
