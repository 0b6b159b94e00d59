#pragma once

#include <stdexcept>
#include <string>

namespace anchorfp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's contract (dimension mismatch, parameter out of range).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Set parameters do not describe a nonempty closed convex set.
class InvalidSet : public Error {
 public:
  using Error::Error;
};

/// A check was asked about a point where its inequality is not claimed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration. `key()` names the offending field when known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class SamplingFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace anchorfp
