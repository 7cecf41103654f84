#pragma once

#include <stdexcept>
#include <string>

namespace fracq {

/// Input violates a type invariant or operation precondition.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not certify its target accuracy.
class AccuracyLoss : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}
}  // namespace detail

}  // namespace fracq
