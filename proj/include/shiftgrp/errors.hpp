#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftgrp {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ReferenceError : public Error {
  using Error::Error;
};
class ShapeError : public Error {
  using Error::Error;
};
class DomainError : public Error {
  using Error::Error;
};
class ComposabilityError : public Error {
  using Error::Error;
};
class CoverageError : public Error {
  using Error::Error;
};
class InconsistencyError : public Error {
  using Error::Error;
};
class AlignmentError : public Error {
  using Error::Error;
};
class BoundExceededError : public Error {
  using Error::Error;
};
class PreconditionError : public Error {
  using Error::Error;
};
class InconclusiveError : public Error {
  using Error::Error;
};
class MalformedCandidateError : public Error {
  using Error::Error;
};
class InterfaceError : public Error {
  using Error::Error;
};

}  // namespace shiftgrp
