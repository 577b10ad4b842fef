#pragma once

#include <stdexcept>
#include <string>

namespace gsteady {

/// Invalid argument supplied by the caller (negative speed, empty grid, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a change-of-variables map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sampled pair exceeded the majorant relative speed of the current step.
class MajorantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The time step no longer resolves the collision rate of the ensemble.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteVelocity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or missing configuration entry; key() names the offender.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace gsteady
