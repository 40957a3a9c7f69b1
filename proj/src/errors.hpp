#pragma once

#include <stdexcept>
#include <string>

namespace qp {

// Bad input: malformed specs, out-of-contract arguments.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation failed to reach its accuracy or resource contract.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation not available for this object (e.g. no Fourier form).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qp
