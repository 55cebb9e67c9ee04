#pragma once

#include <stdexcept>
#include <string>

namespace tiltlab {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete type onto its exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input parsed, but violates a documented precondition (class membership,
// endpoint mismatch, fixture schema).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked to go past its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Never expected; always reported.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace tiltlab
