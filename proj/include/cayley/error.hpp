#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cayley {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented precondition
/// (non-prime modulus, k out of range, wrong matrix shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live in different rings (integers vs. F_p, or two different p).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Digest bytes that do not describe an element of SL2(F_p).
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Finalize or update on a hash state that was already finalized.
class StateError : public Error {
 public:
  using Error::Error;
};

/// The matrix is not a product of nonnegative powers of A(1), B(1).
class NotPositiveWord : public Error {
 public:
  using Error::Error;
};

/// The matrix is not in the subgroup generated by A(2), B(2).
class NotInSanovSubgroup : public Error {
 public:
  using Error::Error;
};

/// A search gave up after spending its configured budget. Retrying with a
/// different seed may succeed.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured memory or size guard.
class ResourceGuard : public Error {
 public:
  using Error::Error;
};

}  // namespace cayley
