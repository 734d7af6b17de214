#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

/// Raised for contract violations and failed numerical certificates.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lacunary
