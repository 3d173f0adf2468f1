// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qinterf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionCapExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class BinningMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Not enough data to compute a statistic or fit.
class InsufficientData : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical routine produced a result that violates its contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iterative eigensolver did not converge.
class EigensolverFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qinterf
