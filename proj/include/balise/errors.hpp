#pragma once

#include <stdexcept>
#include <string>

namespace balise {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field widths or lengths do not match the telegram format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An 11-bit word outside the substitution alphabet.
class InvalidWord : public Error {
 public:
  using Error::Error;
};

/// The received bitstream was exhausted without an aligned telegram.
class NoTelegramFound : public Error {
 public:
  using Error::Error;
};

/// A telegram was aligned but its control bits are not (0, 0, 1).
class ControlBitError : public Error {
 public:
  using Error::Error;
};

/// The recomputed tag does not match the telegram's scrambling bits.
class AuthFailure : public Error {
 public:
  using Error::Error;
};

/// Expected deceleration requested for a reference at the stop point itself.
class DegenerateReference : public Error {
 public:
  using Error::Error;
};

/// The simulated train did not come to rest within the configured time.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (JSON schema, hex strings, bit strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace balise
