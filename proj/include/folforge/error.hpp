#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace folforge {

// Base of every error thrown by the library.  `is_usage()` separates
// configuration mistakes (bad flags, invalid bounds) from data errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool is_usage() const { return false; }
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::set<std::string> expected,
              std::string found)
      : Error(format(offset, expected, found)),
        offset_(offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at byte " + std::to_string(offset) + ": " +
              message),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  static std::string format(std::size_t offset,
                            const std::set<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at byte " + std::to_string(offset) +
                      ": expected one of {";
    bool first = true;
    for (const auto& e : expected) {
      if (!first) msg += ", ";
      msg += e;
      first = false;
    }
    msg += "}, found " + found;
    return msg;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
  std::string found_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
  bool is_usage() const override { return true; }
};

// No derivation of the grammar fits the requested bounds.
class DepthUnreachable : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ExhaustedSampling : public Error {
 public:
  using Error::Error;
};

class NoMatchingPredicate : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

class FileError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class UnlexicalizedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace folforge
