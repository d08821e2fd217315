#pragma once

#include <stdexcept>
#include <string>

namespace tts {

// Malformed input data (edge lists, predictor files). Carries a 1-based line
// number when the source is line-oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                : std::move(msg)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid argument values (delta < 0, p outside (0,1], ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition was violated (unsorted stream, stream not
// preprocessed, predictor does not cover an edge, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tts
