#pragma once

#include <stdexcept>
#include <string>

namespace cloning {

/// Raised when an operation is not defined for the given system or group
/// (enumerating an infinite group, mapping a non-compatible system to V_d).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cloning
