#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apmap {

// Bad input data: malformed files, inconsistent sizes, invalid parameters.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation refused to run because it would exceed a configured cap
// (candidate count for exact search, tie enumeration limit, ...).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace apmap
