#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radiolab {

enum class ErrorCode {
  IndexOutOfRange,
  DuplicateEdge,
  SelfLoop,
  Disconnected,
  OddSize,
  NotPerfectEvenSquare,
  InvalidParams,
  ParseError,
  RoundLimitExceeded,
  MalformedCodeword,
  Undominatable,
  EmptySourceSet,
  MessageTooLong,
  TooShallow,
  WitnessNotFound,
  ProtocolViolation,
  InconsistentReports,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace radiolab
