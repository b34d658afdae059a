#pragma once

#include <stdexcept>
#include <string>

namespace coact {

// Out-of-band failures. Tool-level failures are data (ToolResult), not
// exceptions; these cover broken inputs and protocol misuse.
enum class ErrorCode {
  LineageMismatch,
  TurnAlreadyActive,
  ConfigInvalid,
  CorruptLog,
  EmptyCorpus,
  LedgerGap,
  SearchSpaceEmpty,
  IncompatiblePair,
  NoEligibleTarget,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coact
