#pragma once

#include <stdexcept>
#include <string>

namespace infarm {

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain (negative reward, μ > 1 for Bernoulli, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Mean or standard deviation requested for an arm with no observations.
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or unsatisfiable experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// No target mean exists inside the prior support for the requested horizon.
class HorizonTooSmall : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A policy asked the engine to play an arm that has not been opened.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Series truncation left a tail larger than the requested bound.
class TailBoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace infarm
