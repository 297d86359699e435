// popcert: error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace popcert {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the TRS and certificate parsers; carries a 1-based source position.
class ParseError : public Error {
public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

}  // namespace popcert
