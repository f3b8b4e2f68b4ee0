#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace msched {

/// Dimension or identity mismatch between values that must agree.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request that references missing or contradictory configuration.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No solution satisfying the constraints was found (or can exist).
class InfeasibilityError : public std::runtime_error {
 public:
  InfeasibilityError(const std::string& what, std::vector<int> best_counts = {},
                     double best_violation = 0.0)
      : std::runtime_error(what),
        best_counts_(std::move(best_counts)),
        best_violation_(best_violation) {}

  // Least-violating candidate seen, if the solver tracked one.
  const std::vector<int>& best_counts() const noexcept { return best_counts_; }
  double best_violation() const noexcept { return best_violation_; }

 private:
  std::vector<int> best_counts_;
  double best_violation_;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace msched
