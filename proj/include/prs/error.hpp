#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prs {

enum class ErrorCode {
  InvalidModulus,
  NotInvertible,
  InvalidArgument,
  InvalidInput,
  InvalidPoint,
  TooLarge,
  UndefinedAtInfinity,
  BudgetExceeded,
  Parse,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModulus: return "invalid-modulus";
    case ErrorCode::NotInvertible: return "not-invertible";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InvalidPoint: return "invalid-point";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::UndefinedAtInfinity: return "undefined-at-infinity";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

// Base exception of the library; code() identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class ParseErrorKind { BadHeader, BadSymbol, Truncated, TrailingData, Empty };

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::BadHeader: return "malformed header";
    case ParseErrorKind::BadSymbol: return "bad symbol";
    case ParseErrorKind::Truncated: return "truncated payload";
    case ParseErrorKind::TrailingData: return "trailing data";
    case ParseErrorKind::Empty: return "empty sequence";
  }
  return "unknown";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& detail = {})
      : Error(ErrorCode::Parse, std::string(to_string(kind)) + " at offset " + std::to_string(offset) +
                                    (detail.empty() ? "" : " (" + detail + ")")),
        kind_(kind),
        offset_(offset) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

}  // namespace prs
