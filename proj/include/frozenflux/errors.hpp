#pragma once

#include <stdexcept>
#include <string>

namespace frozenflux {

/// Base of every error thrown by the library. `key()` is a short stable token
/// used by the CLI for its key=value diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Caller passed something that violates a precondition (bad grid, bad range,
/// mismatched dimensions, inconsistent initial data).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Configuration file or command-line problem. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The simulation left its admissible regime (density floor, CFL). Maps to exit code 3.
class NumericalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace frozenflux
