#pragma once

#include <stdexcept>
#include <string>

namespace gstrata {

/// Malformed text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on input that violates its documented precondition
/// (wrong variable count, non-Borel ideal, unbounded tail, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource limit (window degree, minors size, Groebner steps) was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define GSTRATA_ASSERT(cond, msg)                                           \
  do {                                                                      \
    if (!(cond)) throw ::gstrata::InternalError(std::string("assertion `") + \
                                               #cond + "` failed: " + (msg)); \
  } while (0)

}  // namespace gstrata
