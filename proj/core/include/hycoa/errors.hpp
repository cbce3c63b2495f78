#pragma once

#include <stdexcept>
#include <string>

namespace hycoa {

// Raised when a bounded enumeration or budget is exhausted. Never conflated
// with a negative verdict: callers map it to a distinct result status.
class ResourceBoundError : public std::runtime_error {
 public:
  explicit ResourceBoundError(const std::string& what) : std::runtime_error(what) {}
};

class UnboundNominalError : public std::runtime_error {
 public:
  explicit UnboundNominalError(const std::string& nom)
      : std::runtime_error("nominal without valuation: " + nom) {}
};

class NotPureError : public std::runtime_error {
 public:
  explicit NotPureError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hycoa
