#pragma once

#include <stdexcept>
#include <string>

namespace qdesign {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or missing dimensions (including a missing bipartition).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A state, ensemble or file violates a validated invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard size guard (permutation order, dense N^t operators).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Valid input for which the operation is not defined or not cataloged.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A file or document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Built-in data failed its internal cross-check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An ensemble was used as a design but fails the design criterion.
class UnverifiedDesignError : public Error {
 public:
  UnverifiedDesignError(const std::string& what, double delta)
      : Error(what), delta_(delta) {}
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

}  // namespace qdesign
