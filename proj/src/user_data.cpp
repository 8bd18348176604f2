#include "balise/user_data.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "balise/errors.hpp"

namespace balise {

namespace {

struct FieldSpec {
  std::size_t width;
};

// q_updown .. q_link, in transmission order.
constexpr FieldSpec kHeaderFields[] = {{1}, {7}, {1}, {3}, {3}, {2}, {8}, {10}, {14}, {1}};

void check_width(std::uint64_t value, std::size_t width, const char* name) {
  if (value >> width) {
    throw FormatError(std::string("header field ") + name + " exceeds " +
                      std::to_string(width) + " bits");
  }
}

}  // namespace

UserData::UserData(FormatKind format, BitString bits) : format_(format), bits_(std::move(bits)) {
  const auto& fmt = format_of(format);
  if (bits_.size() != fmt.user_bits) {
    throw FormatError("user data for the " + std::string(fmt.name()) + " format must be " +
                      std::to_string(fmt.user_bits) + " bits, got " +
                      std::to_string(bits_.size()));
  }
}

UserData UserData::build(FormatKind format, const BaliseHeader& h,
                         std::int32_t reported_location_mm) {
  const std::uint64_t values[] = {h.q_updown, h.m_version, h.q_media, h.n_pig,  h.n_total,
                                  h.m_dup,    h.m_mcount,  h.nid_c,   h.nid_bg, h.q_link};
  const char* names[] = {"Q_UPDOWN", "M_VERSION", "Q_MEDIA", "N_PIG",  "N_TOTAL",
                         "M_DUP",    "M_MCOUNT",  "NID_C",   "NID_BG", "Q_LINK"};
  BitString bits;
  for (std::size_t i = 0; i < std::size(kHeaderFields); ++i) {
    check_width(values[i], kHeaderFields[i].width, names[i]);
    bits.append_uint(values[i], kHeaderFields[i].width);
  }
  bits.append_uint(static_cast<std::uint32_t>(reported_location_mm), kLocationBits);
  bits.append_uint(kEndOfInformation, 8);
  const auto& fmt = format_of(format);
  bits.append(BitString(fmt.user_bits - bits.size()));
  return UserData(format, std::move(bits));
}

UserData UserData::build(FormatKind format, std::uint16_t balise_group_id,
                         std::int32_t reported_location_mm) {
  BaliseHeader h;
  h.nid_bg = balise_group_id;
  return build(format, h, reported_location_mm);
}

BaliseHeader UserData::header() const {
  BaliseHeader h;
  std::size_t pos = 0;
  auto take = [&](std::size_t width) {
    const auto v = bits_.read_uint(pos, width);
    pos += width;
    return v;
  };
  h.q_updown = static_cast<std::uint8_t>(take(1));
  h.m_version = static_cast<std::uint8_t>(take(7));
  h.q_media = static_cast<std::uint8_t>(take(1));
  h.n_pig = static_cast<std::uint8_t>(take(3));
  h.n_total = static_cast<std::uint8_t>(take(3));
  h.m_dup = static_cast<std::uint8_t>(take(2));
  h.m_mcount = static_cast<std::uint8_t>(take(8));
  h.nid_c = static_cast<std::uint16_t>(take(10));
  h.nid_bg = static_cast<std::uint16_t>(take(14));
  h.q_link = static_cast<std::uint8_t>(take(1));
  return h;
}

std::uint16_t UserData::balise_group_id() const {
  return static_cast<std::uint16_t>(bits_.read_uint(kBaliseGroupIdPos, kBaliseGroupIdBits));
}

std::int32_t UserData::reported_location_mm() const {
  return static_cast<std::int32_t>(
      static_cast<std::uint32_t>(bits_.read_uint(kLocationPos, kLocationBits)));
}

UserData UserData::with_reported_location(std::int32_t mm) const {
  BitString bits = bits_;
  bits.write_uint(kLocationPos, kLocationBits, static_cast<std::uint32_t>(mm));
  return UserData(format_, std::move(bits));
}

std::int32_t metres_to_mm(double metres) {
  const double mm = std::round(metres * 1000.0);
  if (!std::isfinite(mm) || mm < std::numeric_limits<std::int32_t>::min() ||
      mm > std::numeric_limits<std::int32_t>::max()) {
    throw FormatError("location does not fit the 32-bit millimetre field");
  }
  return static_cast<std::int32_t>(mm);
}

}  // namespace balise
