#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcfrag {

enum class ErrorCode {
  kInvalidArgument,
  kSelfCheckFailed,
  kUnknownLocation,
  kCspUnreachable,
  kEmptyCspList,
  kPcspUnreachable,
  kUnknownObject,
  kUnrecoverable,
  kNoNewPcsp,
  kSharedFragment,
  kPolicyViolation,
  kBadRow,
  kDegenerateEntity,
  kUnplaceableTerm,
  kEmptyCorpus,
  kUnknownCsp,
  kObjectExists,
  kReassemblyFailed,
  kCorruptMetadata,
  kIo,
  kWorkspaceLocked,
};

// Stable identifier used in machine-readable error output ("PcspUnreachable").
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // Row index for kUnrecoverable / kBadRow.
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace mcfrag
