#include "madkit/error.hpp"

namespace madkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Validation: return "validation error";
    case ErrorCode::EmptyClass: return "empty class";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::CorruptModel: return "corrupt model";
    case ErrorCode::Unreachable: return "unreachable target";
    case ErrorCode::Numeric: return "numeric error";
  }
  return "error";
}

namespace {
std::string located(const std::string& message, std::optional<std::size_t> line,
                    const std::string& field) {
  std::string out = message;
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (!field.empty()) out += " (field " + field + ")";
  return out;
}
}  // namespace

ParseError::ParseError(const std::string& message, std::optional<std::size_t> line,
                       std::string field)
    : Error(ErrorCode::Parse, located(message, line, field)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace madkit
