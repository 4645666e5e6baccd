#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace assure {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kMalformedSample,
  kInsufficientSubgroups,
  kInsufficientPanel,
  kMissingTolerance,
  kSweepDegenerate,
  kConfigInvalid,
  kNegativeWeight,
  kSumNotOne,
  kEmptySequence,
  kMissingColumn,
  kMalformedRow,
  kEmptyFile,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All engine failures are reported through this type. Validation failures and
// I/O failures are distinguished by code so callers can map them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_io() const noexcept { return code_ == ErrorCode::kIo; }

 private:
  ErrorCode code_;
};

}  // namespace assure
