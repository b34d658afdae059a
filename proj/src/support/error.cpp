#include "support/error.hpp"

namespace coact {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LineageMismatch: return "LineageMismatch";
    case ErrorCode::TurnAlreadyActive: return "TurnAlreadyActive";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::LedgerGap: return "LedgerGap";
    case ErrorCode::SearchSpaceEmpty: return "SearchSpaceEmpty";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::NoEligibleTarget: return "NoEligibleTarget";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace coact
