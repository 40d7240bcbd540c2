#pragma once

#include <stdexcept>
#include <string>

namespace rcbound {

// Input outside a function's stated domain (negative probability, delta out
// of range, upper quantile below lower, ...).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An iteration (series, continued fraction, root solve) failed to reach its
// tolerance within its iteration cap.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency condition was violated (probability mass above 1,
// sum of term probabilities drifting past its cap).
struct InvariantViolation : std::logic_error {
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A size guard was exceeded (ensemble too large for an enumeration path).
struct SizeExceeded : std::invalid_argument {
  explicit SizeExceeded(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rcbound
