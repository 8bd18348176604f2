#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "balise/bitstring.hpp"
#include "balise/format.hpp"
#include "balise/polynomial.hpp"
#include "balise/scrambler.hpp"
#include "balise/substitution.hpp"
#include "balise/user_data.hpp"

namespace balise {

inline constexpr std::uint16_t kExtraShapingPattern = 0b0101010101;

/// Substitution table and generator polynomial shared by encoder and decoder.
struct CodecContext {
  const SubstitutionTable* table = &SubstitutionTable::surrogate();
  const GeneratorPolynomial* poly = &GeneratorPolynomial::surrogate();
};

/// A complete n-bit telegram with field accessors.
class Telegram {
 public:
  /// Throws FormatError if `bits` is not exactly n bits long.
  Telegram(FormatKind format, BitString bits);

  FormatKind format_kind() const noexcept { return format_; }
  const TelegramFormat& format() const noexcept { return format_of(format_); }
  const BitString& bits() const noexcept { return bits_; }

  BitString shaped_data() const;
  /// (b109, b108, b107) packed as a 3-bit integer.
  std::uint8_t control_bits() const;
  std::uint16_t scrambling_bits() const;
  std::uint16_t extra_shaping_bits() const;
  BitString check_bits() const;

  friend bool operator==(const Telegram&, const Telegram&) = default;

 private:
  FormatKind format_;
  BitString bits_;
};

inline constexpr std::uint8_t kExpectedControlBits = 0b001;

/// Scramble, substitute, append cb/sb/esb and the check field.
/// `sb` is written verbatim; the caller chooses how S relates to it.
Telegram encode(const UserData& user, std::uint16_t sb, ScramblingKey key,
                const CodecContext& ctx = {});

/// Legacy encoding: S derived publicly from `sb`.
Telegram encode_legacy(const UserData& user, std::uint16_t sb, const CodecContext& ctx = {});

/// Maps the received scrambling bits to the descrambling key.
using KeyDerivation = std::function<ScramblingKey(std::uint16_t sb)>;

struct Alignment {
  std::size_t shift = 0;
  bool inverted = false;
  BitString telegram;  // n bits, already re-inverted if needed
};

/// Slides an (n + r)-bit window over `stream` one bit at a time until the
/// parity, repetition and alphabet checks pass. r switches to n once the
/// window has moved past the format's fallback threshold. Each window is
/// tried at both polarities; a candidate whose control bits are invalid is
/// rejected in favour of the other polarity.
///
/// Windows that pass the three checks but carry wrong control bits are
/// skipped. Returns nullopt when the stream is exhausted without any such
/// window, throws ControlBitError when only bad-control-bit windows were
/// seen, and FormatError when the stream is shorter than n + r_init.
std::optional<Alignment> align_telegram(const BitString& stream, const TelegramFormat& format,
                                        const CodecContext& ctx = {});

/// Desubstitutes the shaped data of an aligned telegram into scrambled user bits.
BitString unshape(const Telegram& telegram, const CodecContext& ctx = {});

struct DecodeResult {
  UserData user;
  std::uint16_t sb;
  std::size_t shift;
  bool inverted;
};

/// Full receive path: align, verify control bits, desubstitute, descramble.
/// Throws NoTelegramFound, ControlBitError or FormatError.
DecodeResult decode_stream(const BitString& stream, const TelegramFormat& format,
                           const KeyDerivation& derive_key, const CodecContext& ctx = {});

DecodeResult decode_stream_legacy(const BitString& stream, const TelegramFormat& format,
                                  const CodecContext& ctx = {});

/// Simulated balise passage: `copies` repetitions of the telegram starting
/// `offset` bits into it.
BitString passage_stream(const Telegram& telegram, std::size_t offset, std::size_t copies = 3);

}  // namespace balise
