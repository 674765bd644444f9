#pragma once

#include <stdexcept>
#include <string>

namespace fqdist {

// Operation applied outside its mathematical domain (division by zero, a
// rotation whose hypothesis fails, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid parameters: composite or even characteristic, dimension mismatch,
// empty inputs where a nonempty set is required.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured desk-scale ceiling.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Two computations that must agree (closed form vs direct summation) did
// not, beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqdist
