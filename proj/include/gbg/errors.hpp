#pragma once

#include <stdexcept>
#include <string>

namespace gbg {

// Process exit statuses shared by the CLI and the service error mapping.
enum class ExitCode : int {
  ok = 0,
  rejected = 1,
  bad_input = 2,
  cap_exceeded = 3,
  internal = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::internal; }
};

// Malformed text, duplicate points, bad weights, identical points passed to line_key.
class InputError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::bad_input; }
};

// A solver or step was called outside its domain (collinear set, wrong size, ...).
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

// A LineKey that is not a connecting line of the board.
class UnknownLineError : public InputError {
 public:
  using InputError::InputError;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::cap_exceeded; }
};

// A mathematical invariant failed; always a bug in this library.
class InvariantError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::internal; }
};

}  // namespace gbg
