#pragma once

#include <stdexcept>
#include <string>

namespace chanopt {

/// Invalid user-facing configuration (unknown scenario, bad key, bad value).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric safety guard tripped (problem too large, solver iteration cap).
class NumericGuardError : public std::runtime_error {
public:
  explicit NumericGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chanopt
