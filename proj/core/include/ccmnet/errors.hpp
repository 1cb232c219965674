#pragma once

#include <stdexcept>
#include <string>

namespace ccmnet {

// Invalid parameters map onto std::invalid_argument; the remaining error
// categories named by the operation contracts get their own types so callers
// can distinguish them.

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what)
      : std::runtime_error(what) {}
};

class DegenerateStateError : public std::runtime_error {
 public:
  explicit DegenerateStateError(const std::string& what)
      : std::runtime_error(what) {}
};

class NotBracketedError : public std::runtime_error {
 public:
  explicit NotBracketedError(const std::string& what)
      : std::runtime_error(what) {}
};

class NoOverlapError : public std::runtime_error {
 public:
  explicit NoOverlapError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit ConfigError(const std::string& what)
      : std::runtime_error(what), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

class EnsembleError : public std::runtime_error {
 public:
  explicit EnsembleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ccmnet
