#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lyclamp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a plant state leaves the finite reals.
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

/// Raised when a threshold would divide by a zero gain (b or b*dt).
class DegenerateGain : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

/// Validation / parse failure in a run configuration. `field` is the dotted
/// key path (e.g. "plant.b"); `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, std::size_t line = 0);

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

}  // namespace lyclamp
