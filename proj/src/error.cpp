#include "gibbsloss/error.hpp"

namespace gibbsloss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::UnknownSymbolInRelation: return "UnknownSymbolInRelation";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::EmptyAfterTrim: return "EmptyAfterTrim";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::EmptyFiber: return "EmptyFiber";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::PhaseCap: return "PhaseCap";
    case ErrorCode::MarkedNever: return "MarkedNever";
    case ErrorCode::InvalidBridge: return "InvalidBridge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NoStationary: return "NoStationary";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::EmptyMarkedAlphabet: return "EmptyMarkedAlphabet";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace gibbsloss
