#include "cinf/errors.hpp"

namespace cinf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::PendingObligation: return "PendingObligation";
    case ErrorCode::ObligationViolated: return "ObligationViolated";
    case ErrorCode::IdealMismatch: return "IdealMismatch";
    case ErrorCode::NotInvertibleOnZeroset: return "NotInvertibleOnZeroset";
    case ErrorCode::OrderRefuted: return "OrderRefuted";
    case ErrorCode::NotEqual: return "NotEqual";
    case ErrorCode::NotNowhereZero: return "NotNowhereZero";
    case ErrorCode::UnknownVerdict: return "UnknownVerdict";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::RegularityUnknown: return "RegularityUnknown";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Io: return "Io";
  }
  return "?";
}

}  // namespace cinf
