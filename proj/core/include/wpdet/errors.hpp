#pragma once

#include <stdexcept>
#include <string>

namespace wpdet {

/// Argument lengths disagree (exponent vs. weight vector, point vs. form).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation undefined on the given value (zero form, n = 0, m = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters outside the supported (d, k) regime.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation exceeding a configured size cap.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (forms, weight lists, JSON documents).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpdet
