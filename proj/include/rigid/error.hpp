#pragma once

#include <stdexcept>
#include <string>

namespace rigid {

/// Raised when caller-supplied data violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two independent numerical routes disagree, which means the
/// tolerances in use are misconfigured for the input at hand.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace rigid
