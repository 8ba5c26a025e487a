#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace engelgrp {

// Base of every error the library throws. Callers that only need to know
// "something was rejected" catch this; the harness maps subclasses to exit
// codes and per-record error entries.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
public:
  using Error::Error;
};

class InvalidPermutation : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0,
             std::size_t column = 0)
      : Error(what), offset_(offset), line_(line), column_(column) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

// Any configured size limit was hit. The caller should retry on a smaller
// instance or raise the cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

class IndexCapExceeded : public CapExceeded {
public:
  using CapExceeded::CapExceeded;
};

class NotSubgroup : public Error {
public:
  using Error::Error;
};

class NotNormal : public Error {
public:
  using Error::Error;
};

class NotMember : public Error {
public:
  using Error::Error;
};

class NotSoluble : public Error {
public:
  using Error::Error;
};

class NotNormalized : public Error {
public:
  using Error::Error;
};

class TwistNotNormalizing : public Error {
public:
  using Error::Error;
};

class InvariantViolation : public Error {
public:
  using Error::Error;
};

class PremiseFailed : public Error {
public:
  using Error::Error;
};

class UnknownConstructor : public Error {
public:
  using Error::Error;
};

// A corpus recipe with well-formed syntax but unusable parameters.
class InvalidRecipe : public Error {
public:
  using Error::Error;
};

class InvalidHomomorphism : public Error {
public:
  using Error::Error;
};

}  // namespace engelgrp
