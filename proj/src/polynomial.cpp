#include "balise/polynomial.hpp"

#include <algorithm>
#include <string>

#include "balise/errors.hpp"

namespace balise {

namespace {

// x^85 + x^84 + x^80 + x^77 + x^73 + x^68 + x^61 + x^59 + x^53 + x^47 + x^42
//  + x^37 + x^33 + x^29 + x^24 + x^18 + x^15 + x^11 + x^7 + x^4 + x^3 + x + 1
constexpr int kSurrogateExponents[] = {85, 84, 80, 77, 73, 68, 61, 59, 53, 47, 42, 37,
                                       33, 29, 24, 18, 15, 11, 7,  4,  3,  1,  0};

}  // namespace

const GeneratorPolynomial& GeneratorPolynomial::surrogate() {
  static const GeneratorPolynomial g = from_exponents(
      std::vector<int>(std::begin(kSurrogateExponents), std::end(kSurrogateExponents)));
  return g;
}

GeneratorPolynomial GeneratorPolynomial::from_exponents(std::vector<int> exponents) {
  std::sort(exponents.begin(), exponents.end());
  if (std::adjacent_find(exponents.begin(), exponents.end()) != exponents.end()) {
    throw FormatError("generator polynomial exponents must be distinct");
  }
  if (exponents.empty() || exponents.front() != 0) {
    throw FormatError("generator polynomial needs a nonzero constant term");
  }
  if (exponents.back() != static_cast<int>(kDegree)) {
    throw FormatError("generator polynomial must have degree exactly " +
                      std::to_string(kDegree));
  }
  Remainder low;
  for (int e : exponents) {
    if (e < 0) throw FormatError("negative exponent in generator polynomial");
    if (e < static_cast<int>(kDegree)) low.set(static_cast<std::size_t>(e));
  }
  return GeneratorPolynomial(low);
}

std::vector<int> GeneratorPolynomial::exponents() const {
  std::vector<int> out{static_cast<int>(kDegree)};
  for (std::size_t i = kDegree; i-- > 0;) {
    if (low_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

GeneratorPolynomial::Remainder GeneratorPolynomial::remainder(const BitString& bits,
                                                              std::size_t pos,
                                                              std::size_t len) const {
  Remainder r;
  for (std::size_t i = 0; i < len; ++i) r = shift_in(r, bits[pos + i]);
  return r;
}

GeneratorPolynomial::Remainder GeneratorPolynomial::x_pow_mod(std::size_t k) const {
  Remainder r;
  r.set(0);
  for (std::size_t i = 0; i < k; ++i) r = shift_in(r, false);
  return r;
}

BitString compute_check_bits(const BitString& prefix, const GeneratorPolynomial& g) {
  // Feeding 85 zeros after the prefix multiplies it by x^85.
  auto r = g.remainder(prefix);
  for (std::size_t i = 0; i < GeneratorPolynomial::kDegree; ++i) r = g.shift_in(r, false);
  BitString out(GeneratorPolynomial::kDegree);
  for (std::size_t i = 0; i < GeneratorPolynomial::kDegree; ++i) {
    out.set(i, r[GeneratorPolynomial::kDegree - 1 - i]);
  }
  return out;
}

}  // namespace balise
