#pragma once

#include <bitset>
#include <cstddef>
#include <vector>

#include "balise/bitstring.hpp"
#include "balise/format.hpp"

namespace balise {

/// Binary generator polynomial of degree 85 for the telegram check field.
///
/// Remainders are held as bitsets where bit i is the coefficient of x^i.
/// The surrogate polynomial does not divide x^1023 + 1 or x^341 + 1, so a
/// cyclic rotation of a codeword is (almost surely) not itself a codeword
/// and the parity check alone pins the telegram start.
class GeneratorPolynomial {
 public:
  static constexpr std::size_t kDegree = kCheckBits;
  using Remainder = std::bitset<kDegree>;

  static const GeneratorPolynomial& surrogate();
  /// Exponents with nonzero coefficient; must include 85 and 0, max 85.
  static GeneratorPolynomial from_exponents(std::vector<int> exponents);

  std::vector<int> exponents() const;

  /// (r * x + bit) mod g.
  Remainder shift_in(const Remainder& r, bool bit) const noexcept {
    const bool carry = r[kDegree - 1];
    Remainder next = r << 1;
    next[0] = bit;
    if (carry) next ^= low_;
    return next;
  }

  /// Remainder of bits[pos, pos+len) read as a polynomial, leftmost bit highest.
  Remainder remainder(const BitString& bits, std::size_t pos, std::size_t len) const;
  Remainder remainder(const BitString& bits) const { return remainder(bits, 0, bits.size()); }

  /// x^k mod g.
  Remainder x_pow_mod(std::size_t k) const;

 private:
  explicit GeneratorPolynomial(const Remainder& low) : low_(low) {}

  Remainder low_;  // coefficients of x^0 .. x^84; x^85 is implicit
};

/// Check field for an (n-85)-bit prefix: (prefix * x^85) mod g, MSB first.
BitString compute_check_bits(const BitString& prefix, const GeneratorPolynomial& g);

}  // namespace balise
