#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nambu {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an expression claimed divisible by (i hbar)^k is not.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

class EvaluationPole : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class StructureConstantError : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Source offsets [begin, end) plus the 1-based line/column of begin.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class SyntaxError : public Error {
 public:
  SyntaxError(Span span, std::vector<std::string> expected, const std::string& found);

  const Span& span() const noexcept { return span_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  Span span_;
  std::vector<std::string> expected_;
};

}  // namespace nambu
