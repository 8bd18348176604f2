#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace balise {

enum class FormatKind : std::uint8_t { Long, Short };

inline constexpr std::size_t kControlBits = 3;
inline constexpr std::size_t kScramblingBits = 12;
inline constexpr std::size_t kExtraShapingBits = 10;
inline constexpr std::size_t kCheckBits = 85;
inline constexpr std::size_t kTrailerBits =
    kControlBits + kScramblingBits + kExtraShapingBits + kCheckBits;

/// Geometry of one of the two telegram lengths.
///
///   | shaped data | cb (3) | sb (12) | esb (10) | check bits (85) |
///
/// Shaped data carries user_bits / 10 substituted 11-bit words.
struct TelegramFormat {
  FormatKind kind;
  std::size_t n;
  std::size_t shaped_bits;
  std::size_t user_bits;
  std::size_t r_init;
  std::size_t r_fallback_threshold;

  constexpr std::size_t words() const noexcept { return user_bits / 10; }
  constexpr std::size_t prefix_bits() const noexcept { return n - kCheckBits; }

  // Field offsets in transmission order.
  constexpr std::size_t cb_pos() const noexcept { return shaped_bits; }
  constexpr std::size_t sb_pos() const noexcept { return cb_pos() + kControlBits; }
  constexpr std::size_t esb_pos() const noexcept { return sb_pos() + kScramblingBits; }
  constexpr std::size_t check_pos() const noexcept { return esb_pos() + kExtraShapingBits; }

  /// Leading byte of the MAC input; binds the tag to the telegram length.
  constexpr std::uint8_t mac_domain_byte() const noexcept {
    return kind == FormatKind::Long ? 0x01 : 0x02;
  }

  constexpr std::string_view name() const noexcept {
    return kind == FormatKind::Long ? "long" : "short";
  }
};

inline constexpr TelegramFormat kLongFormat{FormatKind::Long, 1023, 913, 830, 77, 7500};
inline constexpr TelegramFormat kShortFormat{FormatKind::Short, 341, 231, 210, 121, 7500};

constexpr const TelegramFormat& format_of(FormatKind kind) noexcept {
  return kind == FormatKind::Long ? kLongFormat : kShortFormat;
}

static_assert(kLongFormat.n == kLongFormat.shaped_bits + kTrailerBits);
static_assert(kShortFormat.n == kShortFormat.shaped_bits + kTrailerBits);
static_assert(kLongFormat.shaped_bits == 11 * kLongFormat.words());
static_assert(kShortFormat.shaped_bits == 11 * kShortFormat.words());
static_assert(kLongFormat.user_bits % 10 == 0 && kShortFormat.user_bits % 10 == 0);

/// Parses "long" / "short". Throws ParseError.
FormatKind parse_format_kind(std::string_view name);

}  // namespace balise
