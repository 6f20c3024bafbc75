#pragma once

#include <stdexcept>
#include <string>

namespace holowalk {

/// Base of every error raised by the library. Sound negative results
/// (refuted operators, empty kernels) are values, never exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A query reached past the precomputed count table.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, long requiredLevel)
      : Error(what), requiredLevel_(requiredLevel) {}

  /// Smallest table level that would have satisfied the query.
  long requiredLevel() const noexcept { return requiredLevel_; }

 private:
  long requiredLevel_;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace holowalk
