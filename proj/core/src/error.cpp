#include "cogniview/error.hpp"

namespace cogniview {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TabCharacter: return "TabCharacter";
    case ErrorKind::BadIndent: return "BadIndent";
    case ErrorKind::UnterminatedString: return "UnterminatedString";
    case ErrorKind::UnknownChar: return "UnknownChar";
    case ErrorKind::InvalidUtf8: return "InvalidUtf8";
    case ErrorKind::BadEscape: return "BadEscape";
    case ErrorKind::IntLiteralOverflow: return "IntLiteralOverflow";
    case ErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ErrorKind::ReturnOutsideFunction: return "ReturnOutsideFunction";
    case ErrorKind::BreakOutsideLoop: return "BreakOutsideLoop";
    case ErrorKind::DuplicateParam: return "DuplicateParam";
    case ErrorKind::DuplicateFunction: return "DuplicateFunction";
    case ErrorKind::ReservedName: return "ReservedName";
    case ErrorKind::NestedCaptureViolation: return "NestedCaptureViolation";
    case ErrorKind::NestingTooDeep: return "NestingTooDeep";
    case ErrorKind::UnresolvedCallee: return "UnresolvedCallee";
    case ErrorKind::StaleCandidate: return "StaleCandidate";
    case ErrorKind::NameCollisionExhausted: return "NameCollisionExhausted";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail, Span span)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)),
      span_(span) {}

}  // namespace cogniview
