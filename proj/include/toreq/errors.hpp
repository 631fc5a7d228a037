#pragma once

#include <stdexcept>

namespace toreq {

/// Raised when the input is well-formed but the requested quantity is
/// undefined for it (a zero on the orbit, a boundary collision, ...).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toreq
