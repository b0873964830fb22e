#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace madkit {

/// Broad error classes. The CLI maps each class to its own exit code.
enum class ErrorCode {
  InvalidArgument,
  Parse,
  Validation,
  EmptyClass,
  DimensionMismatch,
  Io,
  CorruptModel,
  Unreachable,
  Numeric,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the location of the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<std::size_t> line,
             std::string field = {});

  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::optional<std::size_t> line_;
  std::string field_;
};

}  // namespace madkit
