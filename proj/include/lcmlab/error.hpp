#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcmlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (degree, range, integer roots...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised when an invariant that must hold mathematically is violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcmlab
