#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evinf {

enum class ErrorKind {
  InvalidArgument,
  InvalidFocal,
  TotalConflict,
  FrameMismatch,
  EmptyMessage,
  NoMessages,
  NoIndicators,
  Parse,
  Referential,
  Lookup,
  Config,
  Generation,
  UndefinedMetric,
  EmptyReport,
  Usage,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InvalidFocal: return "invalid focal element";
    case ErrorKind::TotalConflict: return "total conflict";
    case ErrorKind::FrameMismatch: return "frame mismatch";
    case ErrorKind::EmptyMessage: return "empty message";
    case ErrorKind::NoMessages: return "no messages";
    case ErrorKind::NoIndicators: return "no indicators";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Referential: return "referential error";
    case ErrorKind::Lookup: return "lookup error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Generation: return "generation error";
    case ErrorKind::UndefinedMetric: return "undefined metric";
    case ErrorKind::EmptyReport: return "empty report";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace evinf
