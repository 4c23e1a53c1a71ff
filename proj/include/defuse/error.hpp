#pragma once

#include <stdexcept>
#include <string>

namespace defuse {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Generation validators kept failing past the retry bound.
class GenerationError : public Error {
public:
  using Error::Error;
};

/// A caller broke the session protocol (wrong role, terminal session, ...).
class ProtocolError : public Error {
public:
  using Error::Error;
};

/// A rule lookup was asked for something the manual does not define.
class RuleError : public Error {
public:
  using Error::Error;
};

class AgentError : public Error {
public:
  using Error::Error;
};

/// Malformed or out-of-range configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Service request failure carrying the HTTP status to report.
class ServiceError : public Error {
public:
  ServiceError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

private:
  int status_;
};

} // namespace defuse
