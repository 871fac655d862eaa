#pragma once

#include <stdexcept>
#include <string>

namespace fgt {

// Thrown when an algorithm detects that it cannot produce a numerically
// trustworthy result (e.g. root counts off, unstable reduced systems).
// Distinct from std::domain_error / std::invalid_argument, which signal
// bad arguments or structurally invalid inputs.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fgt
