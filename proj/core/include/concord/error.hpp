#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace concord {

enum class ErrorCode {
  InvalidArgument,
  NonSquare,
  NegativeCount,
  ZeroTotal,
  DimensionMismatch,
  SchemeMismatch,
  BadHeader,
  MalformedRow,
  UnknownLabel,
  DuplicateKey,
  InconsistentGroundTruth,
  DataShape,
  NoInformation,
  NotInterpretable,
  EmptyInput,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure the library reports. Parse errors carry the 1-based input
/// line they were raised on; other errors leave line() at 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace concord
