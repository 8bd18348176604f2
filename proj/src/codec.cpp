#include "balise/codec.hpp"

#include <string>

#include "balise/errors.hpp"

namespace balise {

FormatKind parse_format_kind(std::string_view name) {
  if (name == "long") return FormatKind::Long;
  if (name == "short") return FormatKind::Short;
  throw ParseError("unknown telegram format '" + std::string(name) + "'");
}

Telegram::Telegram(FormatKind format, BitString bits) : format_(format), bits_(std::move(bits)) {
  if (bits_.size() != format_of(format_).n) {
    throw FormatError("telegram for the " + std::string(format_of(format_).name()) +
                      " format must be " + std::to_string(format_of(format_).n) +
                      " bits, got " + std::to_string(bits_.size()));
  }
}

BitString Telegram::shaped_data() const { return bits_.slice(0, format().shaped_bits); }

std::uint8_t Telegram::control_bits() const {
  return static_cast<std::uint8_t>(bits_.read_uint(format().cb_pos(), kControlBits));
}

std::uint16_t Telegram::scrambling_bits() const {
  return static_cast<std::uint16_t>(bits_.read_uint(format().sb_pos(), kScramblingBits));
}

std::uint16_t Telegram::extra_shaping_bits() const {
  return static_cast<std::uint16_t>(bits_.read_uint(format().esb_pos(), kExtraShapingBits));
}

BitString Telegram::check_bits() const { return bits_.slice(format().check_pos(), kCheckBits); }

Telegram encode(const UserData& user, std::uint16_t sb, ScramblingKey key,
                const CodecContext& ctx) {
  const auto& fmt = format_of(user.format());
  if (user.bits().size() != fmt.user_bits) throw FormatError("user data length mismatch");
  if (sb >> kScramblingBits) throw FormatError("scrambling bits exceed 12 bits");

  const BitString scrambled = scramble(user.bits(), key);
  BitString bits;
  for (std::size_t w = 0; w < fmt.words(); ++w) {
    const auto block = static_cast<std::uint16_t>(scrambled.read_uint(w * 10, 10));
    bits.append_uint(ctx.table->substitute(block), 11);
  }
  bits.append_uint(kExpectedControlBits, kControlBits);
  bits.append_uint(sb, kScramblingBits);
  bits.append_uint(kExtraShapingPattern, kExtraShapingBits);
  bits.append(compute_check_bits(bits, *ctx.poly));
  return Telegram(user.format(), std::move(bits));
}

Telegram encode_legacy(const UserData& user, std::uint16_t sb, const CodecContext& ctx) {
  return encode(user, sb, derive_scrambling_key_legacy(sb), ctx);
}

namespace {

bool tail_repeats_head(const BitString& stream, std::size_t start, std::size_t n,
                       std::size_t r) {
  for (std::size_t j = 0; j < r; ++j) {
    if (stream[start + n + j] != stream[start + j]) return false;
  }
  return true;
}

bool words_valid(const BitString& stream, std::size_t start, bool inverted,
                 const TelegramFormat& fmt, const SubstitutionTable& table) {
  for (std::size_t w = 0; w < fmt.words(); ++w) {
    auto word = static_cast<std::uint16_t>(stream.read_uint(start + 11 * w, 11));
    if (inverted) word ^= 0x7FFu;
    if (!table.contains(word)) return false;
  }
  return true;
}

}  // namespace

std::optional<Alignment> align_telegram(const BitString& stream, const TelegramFormat& fmt,
                                        const CodecContext& ctx) {
  const std::size_t n = fmt.n;
  if (stream.size() < n + fmt.r_init) {
    throw FormatError("stream of " + std::to_string(stream.size()) +
                      " bits is shorter than one decoding window (" +
                      std::to_string(n + fmt.r_init) + ")");
  }
  const auto& g = *ctx.poly;
  // Remainder of the current n-bit window, updated incrementally per shift:
  // W' = W*x + b_new - b_old*x^n.
  auto rem = g.remainder(stream, 0, n);
  const auto xn = g.x_pow_mod(n);
  const auto ones = g.remainder(BitString(n, true));

  std::size_t r = fmt.r_init;
  // A codeword shifted by k bits is still a codeword whenever the k bits
  // moved around the end are zero, so a window can pass the three checks
  // one or two bits off the true boundary. The control bits reject it and
  // the search continues.
  std::optional<std::size_t> bad_cb_shift;
  for (std::size_t shift = 0;; ++shift) {
    if (shift > fmt.r_fallback_threshold) r = n;
    if (shift + n + r > stream.size()) break;

    for (const bool inverted : {false, true}) {
      const auto window_rem = inverted ? (rem ^ ones) : rem;
      if (window_rem.any()) continue;
      // Repetition is polarity-independent.
      if (!tail_repeats_head(stream, shift, n, r)) break;
      if (!words_valid(stream, shift, inverted, fmt, *ctx.table)) continue;

      BitString window = stream.slice(shift, n);
      if (inverted) window = window.inverted();
      if (window.read_uint(fmt.cb_pos(), kControlBits) != kExpectedControlBits) {
        if (!bad_cb_shift) bad_cb_shift = shift;
        continue;
      }
      return Alignment{shift, inverted, std::move(window)};
    }

    if (shift + n < stream.size()) {
      rem = g.shift_in(rem, stream[shift + n]);
      if (stream[shift]) rem ^= xn;
    }
  }
  if (bad_cb_shift) {
    throw ControlBitError("window at shift " + std::to_string(*bad_cb_shift) +
                          " passed every check but carries invalid control bits");
  }
  return std::nullopt;
}

BitString unshape(const Telegram& telegram, const CodecContext& ctx) {
  const auto& fmt = telegram.format();
  BitString scrambled;
  for (std::size_t w = 0; w < fmt.words(); ++w) {
    const auto word = static_cast<std::uint16_t>(telegram.bits().read_uint(11 * w, 11));
    scrambled.append_uint(ctx.table->desubstitute(word), 10);
  }
  return scrambled;
}

DecodeResult decode_stream(const BitString& stream, const TelegramFormat& fmt,
                           const KeyDerivation& derive_key, const CodecContext& ctx) {
  auto aligned = align_telegram(stream, fmt, ctx);
  if (!aligned) throw NoTelegramFound("no valid telegram in " + std::to_string(stream.size()) +
                                      "-bit stream");
  const Telegram telegram(fmt.kind, std::move(aligned->telegram));
  const std::uint16_t sb = telegram.scrambling_bits();
  const BitString user_bits = descramble(unshape(telegram, ctx), derive_key(sb));
  return DecodeResult{UserData(fmt.kind, user_bits), sb, aligned->shift, aligned->inverted};
}

DecodeResult decode_stream_legacy(const BitString& stream, const TelegramFormat& fmt,
                                  const CodecContext& ctx) {
  return decode_stream(stream, fmt, derive_scrambling_key_legacy, ctx);
}

BitString passage_stream(const Telegram& telegram, std::size_t offset, std::size_t copies) {
  return telegram.bits().rotated(offset).repeated(copies);
}

}  // namespace balise
