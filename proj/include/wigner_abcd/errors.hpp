#pragma once

#include <stdexcept>
#include <string>

namespace wigner_abcd {

// Bad input at an API boundary: non-finite entries, determinant off one,
// parameters outside their admissible set.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Argument would overflow or leave the range an algorithm is trusted for.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

// An internal invariant failed. Seeing this is a bug.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// A complex matrix did not land in the real group after similarity.
class ConjugationError : public DomainError {
 public:
  explicit ConjugationError(const std::string& what) : DomainError(what) {}
};

}  // namespace wigner_abcd
