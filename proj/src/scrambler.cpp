#include "balise/scrambler.hpp"

namespace balise {

ScramblingKey derive_scrambling_key_legacy(std::uint16_t sb) {
  const std::uint32_t s = static_cast<std::uint32_t>(sb & 0x0FFFu);
  std::uint32_t value = (s << 20) ^ (s << 8) ^ s ^ 0x5A5A5A5Au;
  if (value == 0) value = 1;
  return ScramblingKey{value};
}

BitString scramble(const BitString& data, ScramblingKey key) {
  Keystream ks(key);
  BitString out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.set(i, data[i] != ks.next());
  return out;
}

}  // namespace balise
