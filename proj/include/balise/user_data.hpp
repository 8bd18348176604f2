#pragma once

#include <cstdint>

#include "balise/bitstring.hpp"
#include "balise/format.hpp"

namespace balise {

/// The 50-bit telegram header. Field order and widths follow the usual
/// balise header layout; `nid_bg` is the 14-bit balise group identifier.
struct BaliseHeader {
  std::uint8_t q_updown = 1;     // 1 bit
  std::uint8_t m_version = 16;   // 7 bits
  std::uint8_t q_media = 0;      // 1 bit
  std::uint8_t n_pig = 0;        // 3 bits
  std::uint8_t n_total = 0;      // 3 bits
  std::uint8_t m_dup = 0;        // 2 bits
  std::uint8_t m_mcount = 0;     // 8 bits
  std::uint16_t nid_c = 0;       // 10 bits
  std::uint16_t nid_bg = 0;      // 14 bits
  std::uint8_t q_link = 1;       // 1 bit

  friend bool operator==(const BaliseHeader&, const BaliseHeader&) = default;
};

inline constexpr std::size_t kHeaderBits = 50;
inline constexpr std::size_t kBaliseGroupIdPos = 35;
inline constexpr std::size_t kBaliseGroupIdBits = 14;
inline constexpr std::size_t kLocationPos = kHeaderBits;
inline constexpr std::size_t kLocationBits = 32;
inline constexpr std::uint8_t kEndOfInformation = 255;
inline constexpr std::uint16_t kMaxBaliseGroupId = (1u << kBaliseGroupIdBits) - 1;

/// Raw user bits of one telegram.
///
/// Packet layout after the header: a signed 32-bit reported location in
/// millimetres, then an 8-bit end-of-information marker, then zero fill.
class UserData {
 public:
  /// Throws FormatError if `bits` does not have the format's user length.
  UserData(FormatKind format, BitString bits);

  static UserData build(FormatKind format, const BaliseHeader& header,
                        std::int32_t reported_location_mm);
  static UserData build(FormatKind format, std::uint16_t balise_group_id,
                        std::int32_t reported_location_mm);

  FormatKind format() const noexcept { return format_; }
  const BitString& bits() const noexcept { return bits_; }

  BaliseHeader header() const;
  std::uint16_t balise_group_id() const;
  std::int32_t reported_location_mm() const;
  double reported_location_m() const { return reported_location_mm() / 1000.0; }

  UserData with_reported_location(std::int32_t mm) const;

  friend bool operator==(const UserData&, const UserData&) = default;

 private:
  FormatKind format_;
  BitString bits_;
};

/// Rounds metres to the nearest millimetre, range-checked for the 32-bit field.
std::int32_t metres_to_mm(double metres);

}  // namespace balise
