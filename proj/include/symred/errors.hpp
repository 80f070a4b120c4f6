#ifndef SYMRED_ERRORS_HPP
#define SYMRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symred {

/// Malformed user input: bad files, bad flags, out-of-range indices.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A symmetry model violates the color discipline (a variable vertex can be
/// mapped outside the variable set).
class EncodingError : public InputError {
public:
  using InputError::InputError;
};

/// Hard cap exceeded in an exhaustive computation.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant violated; indicates a bug, never bad input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace symred

#endif
