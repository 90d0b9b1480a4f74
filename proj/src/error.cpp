#include "nambu/error.hpp"

namespace nambu {
namespace {

std::string syntax_message(const Span& span, const std::vector<std::string>& expected, const std::string& found) {
  std::string msg = "syntax error at " + std::to_string(span.line) + ":" + std::to_string(span.column) + ": expected ";
  if (expected.empty()) msg += "end of input";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  return msg + ", found " + found;
}

}  // namespace

SyntaxError::SyntaxError(Span span, std::vector<std::string> expected, const std::string& found)
    : Error(syntax_message(span, expected, found)), span_(span), expected_(std::move(expected)) {}

}  // namespace nambu
