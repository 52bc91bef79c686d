#include "concord/error.hpp"

namespace concord {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NonSquare: return "non-square matrix";
    case ErrorCode::NegativeCount: return "negative count";
    case ErrorCode::ZeroTotal: return "zero total";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::SchemeMismatch: return "scheme mismatch";
    case ErrorCode::BadHeader: return "bad header";
    case ErrorCode::MalformedRow: return "malformed row";
    case ErrorCode::UnknownLabel: return "unknown label";
    case ErrorCode::DuplicateKey: return "duplicate key";
    case ErrorCode::InconsistentGroundTruth: return "inconsistent ground truth";
    case ErrorCode::DataShape: return "data shape";
    case ErrorCode::NoInformation: return "no information";
    case ErrorCode::NotInterpretable: return "not interpretable";
    case ErrorCode::EmptyInput: return "empty input";
    case ErrorCode::Io: return "I/O error";
  }
  return "unknown error";
}

namespace {
std::string decorate(ErrorCode code, const std::string& message, std::size_t line) {
  std::string out(to_string(code));
  if (line != 0) {
    out += " at line " + std::to_string(line);
  }
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace concord
