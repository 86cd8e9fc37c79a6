#pragma once

#include <stdexcept>
#include <string>

namespace mirrorbench {

// Base for every error raised by the harness.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class RenderConfigError : public Error {
 public:
  using Error::Error;
};

class TemplateMissing : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class BindError : public Error {
 public:
  using Error::Error;
};

class EmptyTrajectory : public Error {
 public:
  using Error::Error;
};

class IncompleteGrid : public Error {
 public:
  using Error::Error;
};

// Agent-side failures. An episode that raises one of these is recorded as
// invalid, never as failed.
class AgentError : public Error {
 public:
  using Error::Error;
  virtual const char* kind() const noexcept = 0;
};

class AgentTimeout : public AgentError {
 public:
  using AgentError::AgentError;
  const char* kind() const noexcept override { return "AgentTimeout"; }
};

class AgentProtocolFailure : public AgentError {
 public:
  using AgentError::AgentError;
  const char* kind() const noexcept override { return "AgentProtocolFailure"; }
};

class TransportError : public AgentError {
 public:
  using AgentError::AgentError;
  const char* kind() const noexcept override { return "TransportError"; }
};

}  // namespace mirrorbench
