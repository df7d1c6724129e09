#pragma once

#include <stdexcept>
#include <string>

namespace capmotion {

// Validation problems (bad arguments, degenerate inputs) are reported as
// std::invalid_argument. Failures of a numerical procedure that received
// well-formed input get their own type so callers can map them to a
// distinct exit status.
class numerical_failure : public std::runtime_error {
 public:
  explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capmotion
