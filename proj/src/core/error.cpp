#include "mcfrag/error.hpp"

namespace mcfrag {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSelfCheckFailed: return "SelfCheckFailed";
    case ErrorCode::kUnknownLocation: return "UnknownLocation";
    case ErrorCode::kCspUnreachable: return "CspUnreachable";
    case ErrorCode::kEmptyCspList: return "EmptyCspList";
    case ErrorCode::kPcspUnreachable: return "PcspUnreachable";
    case ErrorCode::kUnknownObject: return "UnknownObject";
    case ErrorCode::kUnrecoverable: return "Unrecoverable";
    case ErrorCode::kNoNewPcsp: return "NoNewPcsp";
    case ErrorCode::kSharedFragment: return "SharedFragment";
    case ErrorCode::kPolicyViolation: return "PolicyViolation";
    case ErrorCode::kBadRow: return "BadRow";
    case ErrorCode::kDegenerateEntity: return "DegenerateEntity";
    case ErrorCode::kUnplaceableTerm: return "UnplaceableTerm";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnknownCsp: return "UnknownCsp";
    case ErrorCode::kObjectExists: return "ObjectExists";
    case ErrorCode::kReassemblyFailed: return "ReassemblyFailed";
    case ErrorCode::kCorruptMetadata: return "CorruptMetadata";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kWorkspaceLocked: return "WorkspaceLocked";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row)
    : std::runtime_error(message), code_(code), row_(row) {}

}  // namespace mcfrag
