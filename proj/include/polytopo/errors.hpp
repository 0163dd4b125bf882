#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polytopo {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: syntax errors, context mismatches, schema violations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Polynomial or presentation text that does not parse.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured resource budget (basis size, reduction steps, cosets,
/// backtrack nodes) was exhausted before the computation finished.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Randomised analysis could not settle on a value (no strict mode, retry
/// cap hit).
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Input shape outside what an operation supports (e.g. non-hypersurface
/// images for the singular locus).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// The map is not dominant with generically finite fibres.
class NotGenericallyFiniteError : public Error {
 public:
  using Error::Error;
};

/// A fibre that should be finite turned out to be positive dimensional.
class InfiniteFiberError : public Error {
 public:
  using Error::Error;
};

}  // namespace polytopo
