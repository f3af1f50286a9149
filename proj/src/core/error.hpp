#pragma once

#include <stdexcept>
#include <string>

namespace cwsched {

// Bad input: unreadable or malformed file, schema violation, invalid config.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while executing a run whose inputs passed validation.
class RunError : public std::runtime_error {
 public:
  explicit RunError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cwsched
