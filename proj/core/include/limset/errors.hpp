#pragma once

#include <stdexcept>
#include <string>

namespace limset {

// Invalid argument for the mathematical domain of an operation
// (all-zero gcd, dimension mismatch, empty class, ...).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Exact computation is not available at this dimension; use the
// Monte Carlo path instead.
struct UnsupportedExact : std::runtime_error {
  explicit UnsupportedExact(const std::string& what) : std::runtime_error(what) {}
};

// A resonance denominator vanished (||d*alpha - gamma|| = 0).
struct SingularityError : std::runtime_error {
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Operation needs a certificate (boundedness, truncation) that the
// given function cannot provide.
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace limset
