#pragma once

#include <stdexcept>
#include <string>

namespace sarp {

// Input that violates a documented schema or parameter invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds a configured size cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or unreadable file.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sarp
