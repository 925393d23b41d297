#pragma once

#include <stdexcept>
#include <string>

namespace lietower {

// Invalid user input: malformed documents, unsupported shapes, bad flags.
// The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant (must not occur). CLI exit code 2.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lietower
