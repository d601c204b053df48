#pragma once

#include <stdexcept>
#include <string>

namespace gendiv {

/// Raised when an argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a genealogy query names a node that was never recorded.
class UnknownNode : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Configuration problem tied to a specific key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Filesystem failure; carries the offending path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gendiv
