#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sd {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive algorithm was asked to run above its configured size cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. offset is the byte position of the first problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sd
