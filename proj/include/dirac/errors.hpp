#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

// Math-precondition or invariant failure.  `name` is a stable machine-readable
// identifier (the CLI prints it verbatim and exits 2); `what()` adds context.
struct Error : std::runtime_error {
  std::string name;
  Error(std::string name_, const std::string& detail)
      : std::runtime_error(name_ + ": " + detail), name(std::move(name_)) {}
};

// Malformed or unreadable input (CLI exit 1).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& detail) : std::runtime_error(detail) {}
};

// Numerical result outside the requested tolerance (CLI exit 3).
struct ToleranceError : std::runtime_error {
  explicit ToleranceError(const std::string& detail) : std::runtime_error(detail) {}
};

}  // namespace dirac
