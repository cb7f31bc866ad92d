#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracwave {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, used in CLI error JSON.
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed expression text. Carries the byte offset and the token set the
/// parser would have accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Mathematical domain violation: division by zero, ln of a non-positive
/// number, a Gamma pole, an unbound symbol during evaluation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A solution branch or family was instantiated with parameters violating
/// its constraints.
class ConstraintError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "constraint"; }
};

/// Caller passed arguments outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-argument"; }
};

/// An iterative numerical method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

}  // namespace fracwave
