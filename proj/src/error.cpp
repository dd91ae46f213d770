#include "permbound/error.hpp"

namespace permbound {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroPermanent: return "ZeroPermanent";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidGram: return "InvalidGram";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& msg, ErrorSite site)
    : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code), site_(site) {}

void fail(ErrorCode code, const std::string& msg, ErrorSite site) { throw Error(code, msg, site); }

}  // namespace permbound
