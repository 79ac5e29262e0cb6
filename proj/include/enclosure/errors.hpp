#pragma once

#include <stdexcept>
#include <string>

namespace enclosure {

// Invalid user input: configuration, geometry, arguments. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scaled exponent left double-precision range. Maps to CLI exit code 3.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation requested outside the set where a closed form is valid.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Linear solve or fit that cannot be carried out reliably.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace enclosure
