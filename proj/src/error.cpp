#include "radiolab/error.hpp"

namespace radiolab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::OddSize: return "OddSize";
    case ErrorCode::NotPerfectEvenSquare: return "NotPerfectEvenSquare";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RoundLimitExceeded: return "RoundLimitExceeded";
    case ErrorCode::MalformedCodeword: return "MalformedCodeword";
    case ErrorCode::Undominatable: return "Undominatable";
    case ErrorCode::EmptySourceSet: return "EmptySourceSet";
    case ErrorCode::MessageTooLong: return "MessageTooLong";
    case ErrorCode::TooShallow: return "TooShallow";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::ProtocolViolation: return "ProtocolViolation";
    case ErrorCode::InconsistentReports: return "InconsistentReports";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace radiolab
