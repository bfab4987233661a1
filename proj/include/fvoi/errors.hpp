#pragma once

#include <stdexcept>
#include <string>

namespace fvoi {

/// Base for every error raised by the library. The CLI maps each subclass to
/// a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input syntax or schema (unknown literal form, wrong JSON type).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented invariant (ordering, normalization, sums).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A numerical failure: zero marginal likelihood, divergent integral.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace fvoi
