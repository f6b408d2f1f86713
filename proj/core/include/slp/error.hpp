#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A step references a position that has not been computed yet.
class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NotNormalizedError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class CorruptFileError : public Error {
 public:
  using Error::Error;
};

class CorruptLedgerError : public Error {
 public:
  CorruptLedgerError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Program too long for the one-byte-per-index frontier file format.
class IndexOverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace slp
