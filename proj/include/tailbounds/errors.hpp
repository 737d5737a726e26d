#pragma once

#include <stdexcept>
#include <string>

namespace tailbounds {

// Structural input validation failures (bad profiles, laws, flag values).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation was refused because it would exceed the configured work cap.
class ResourceGuardError : public std::runtime_error {
 public:
  explicit ResourceGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tailbounds
