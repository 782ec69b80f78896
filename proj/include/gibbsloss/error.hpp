#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gibbsloss {

enum class ErrorCode {
  MalformedInput,
  DuplicateSymbol,
  UnknownSymbolInRelation,
  MissingLabel,
  EmptyAfterTrim,
  SizeGuard,
  LengthMismatch,
  LabelMismatch,
  EmptyFiber,
  TooShort,
  EmptyGraph,
  PhaseCap,
  MarkedNever,
  InvalidBridge,
  InvalidArgument,
  NotStochastic,
  SupportViolation,
  NoStationary,
  NotInvariant,
  EmptyMarkedAlphabet,
  NotPrimitive,
  NoConvergence,
  TargetOutOfRange,
  UnsupportedFormat,
  FileNotFound,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported through this exception; `code()` names the
/// failure kind so callers (the CLI in particular) can map it to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace gibbsloss
