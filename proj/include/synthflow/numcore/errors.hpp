#pragma once

#include <stdexcept>
#include <string>

namespace synthflow {

// File missing, unreadable, truncated, or not writable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stored artifact does not match what the reader expects (magic, version,
// manifest, tensor shapes, parameter count).
class IncompatibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN or Inf reached a place where it must abort the computation.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& where, const std::string& detail)
      : std::runtime_error(where + ": non-finite value (" + detail + ")"), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace synthflow
