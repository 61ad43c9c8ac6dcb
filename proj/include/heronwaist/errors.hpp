#pragma once

#include <stdexcept>
#include <string>

namespace heronwaist {

// Base class for every error raised by the library. Each subclass maps to a
// distinct CLI exit code (see tools/heronwaist_cli.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: dimension mismatch, non-finite coordinates, index out of range.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A problem instance that violates a structural requirement
// (nondegeneracy, weight vector lengths, chain length).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced during iteration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed problem or results document. `where` is either "line:column"
// or a JSON pointer naming the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

}  // namespace heronwaist
