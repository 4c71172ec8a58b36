#pragma once

#include <stdexcept>
#include <string>

namespace eqflow {

/// Invalid construction parameters (grid sizes, tolerances, config values).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A function was called outside its documented domain.
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

/// Bubble extraction found no transit inside the fit window.
class NoTransitError : public std::runtime_error {
 public:
  explicit NoTransitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eqflow
