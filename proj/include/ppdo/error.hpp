#pragma once

#include <stdexcept>
#include <string>

namespace ppdo {

// Base of every error thrown by the library. The CLI maps ConfigError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ScheduleExhausted : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// Authentication failure: wrong key, flipped bit, or altered header.
class TamperError : public Error {
 public:
  using Error::Error;
};

class NonceExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateState : public Error {
 public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ppdo
