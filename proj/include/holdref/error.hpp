#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holdref {

enum class ErrorKind {
  Syntax,
  UnknownIdentifier,
  Arity,
  ShapeMismatch,
  NonFinite,
  InvalidArgument,
  DegenerateRestriction,
  RegimeMismatch,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure; offset is the byte position of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
      : Error(kind, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace holdref
