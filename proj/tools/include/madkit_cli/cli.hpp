#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "madkit/error.hpp"

namespace madkit::cli {

/// Process exit codes, one per error class.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kInvalidArgument = 3,
  kParse = 4,
  kValidation = 5,
  kEmptyClass = 6,
  kDimensionMismatch = 7,
  kIo = 8,
  kCorruptModel = 9,
  kUnreachable = 10,
  kNumeric = 11,
};

int exit_code(ErrorCode code) noexcept;

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace madkit::cli
