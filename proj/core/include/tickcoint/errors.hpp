#pragma once

#include <stdexcept>
#include <string>

namespace tickcoint {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input or configuration. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Config errors carry the offending line (syntax) or field path (constraint).
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(const std::string& what, int line = 0, std::string field = {});

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }
  // Message without the line and field decoration.
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
  std::string field_;
};

// Runtime failures (exit code 2).
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ExperimentAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace tickcoint
