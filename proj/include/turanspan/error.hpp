#pragma once

#include <stdexcept>
#include <string>

namespace turanspan {

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A floating-point exponent left the representable range.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// A numerical certificate could not be produced (ill-conditioning,
// iteration caps). The CLI maps this to exit code 3.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace turanspan
