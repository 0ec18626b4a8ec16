#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lietwist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text. `position` is a byte offset into the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}

  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// A parameter name used in an expression has no value in the binding.
class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(const std::string& name)
      : Error("unbound parameter '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Evaluation failed: division by zero, square root of a non-square, ...
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Inputs are well-formed but violate a mathematical precondition
/// (J^2 != -I, singular metric, mismatched dimensions, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace lietwist
