/*******************************************************************************
 * Error types shared by all modules.
 *
 * @file:   error.hpp
 ******************************************************************************/
#pragma once

#include <stdexcept>
#include <string>

namespace geosssp {

/// Raised when an operation's contract is violated or an algorithm exhausts
/// its retry budget. `module()` names the owning module.
class ContractError : public std::runtime_error {
public:
  ContractError(std::string module, const std::string &what)
      : std::runtime_error(module + ": " + what), _module(std::move(module)) {}

  [[nodiscard]] const std::string &module() const { return _module; }

private:
  std::string _module;
};

/// Bad user-supplied configuration (CLI ranges, malformed files).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace geosssp
