#include "holdref/error.hpp"

namespace holdref {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UnknownIdentifier: return "unknown identifier";
    case ErrorKind::Arity: return "arity mismatch";
    case ErrorKind::ShapeMismatch: return "shape mismatch";
    case ErrorKind::NonFinite: return "non-finite value";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DegenerateRestriction: return "degenerate restriction";
    case ErrorKind::RegimeMismatch: return "regime mismatch";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

}  // namespace holdref
