#pragma once

#include <stdexcept>
#include <string>

namespace desenat {

// Bad or inconsistent input data: parse failures, invariant violations,
// missing files. CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric breakdown at runtime: diverging training, non-finite losses.
// CLI maps this to exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace desenat
