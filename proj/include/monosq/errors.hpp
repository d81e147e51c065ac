#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace monosq {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A colour query (or scan range) fell outside the colouring's domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::uint64_t point)
      : Error(what), point_(point) {}
  std::uint64_t point() const noexcept { return point_; }

 private:
  std::uint64_t point_;
};

// An invalid colouring rule was rejected at construction. `boundary` is the
// first element at which the rule is inconsistent (0 when not applicable).
class ConstructionError : public Error {
 public:
  explicit ConstructionError(const std::string& what, std::uint64_t boundary = 0)
      : Error(what), boundary_(boundary) {}
  std::uint64_t boundary() const noexcept { return boundary_; }

 private:
  std::uint64_t boundary_;
};

// Malformed text. `position` is a byte offset or a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string position)
      : Error("parse error at " + position + ": " + what),
        position_(std::move(position)) {}
  const std::string& position() const noexcept { return position_; }

 private:
  std::string position_;
};

// Input too large for an exhaustive routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Checked 64-bit arithmetic overflowed.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// An internal invariant guaranteed by the underlying proof failed. This
// always indicates a bug (or a violated precondition upstream).
class ContradictionError : public Error {
 public:
  using Error::Error;
};

}  // namespace monosq
