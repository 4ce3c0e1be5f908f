#ifndef POINCAREKIT_ERRORS_HPP
#define POINCAREKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace poincarekit {

// Bad user input: malformed files, unknown vertices, parameters out of range.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An explicit budget (vertex count, quadruple count, ...) was exceeded.
// The message names the budget and the amount that was requested.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A proved inequality failed to hold. This is a bug detector, not a user error.
class InvariantViolation : public std::logic_error {
public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// Eigensolver failure or other floating-point breakdown.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace poincarekit

#endif
