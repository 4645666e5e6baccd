#include "assure/error.h"

namespace assure {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedSample: return "MalformedSample";
    case ErrorCode::kInsufficientSubgroups: return "InsufficientSubgroups";
    case ErrorCode::kInsufficientPanel: return "InsufficientPanel";
    case ErrorCode::kMissingTolerance: return "MissingTolerance";
    case ErrorCode::kSweepDegenerate: return "SweepDegenerate";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kSumNotOne: return "SumNotOne";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace assure
