#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtergm {

enum class ErrorCode {
  SelfLoop,
  NodeOutOfRange,
  SelfDyad,
  TooFewNodes,
  NegativeDecay,
  BaseLevelDisallowed,
  InvalidModel,
  ModelSpecParse,
  DimensionMismatch,
  InvalidConfig,
  Separation,
  Singular,
  DegenerateModel,
  NonConvergence,
  NotConverged,
  UnknownTimestampFormat,
  InsufficientData,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Name of the library module that owns an error code ("graph_core", "estimator", ...).
std::string_view module_of(ErrorCode code);

/// Every failure in the library surfaces as this exception. `operation` names the
/// public operation that failed so that callers can produce structured reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string operation, const std::string& cause);

  ErrorCode code() const noexcept { return code_; }
  const std::string& operation() const noexcept { return operation_; }
  const std::string& cause() const noexcept { return cause_; }
  std::string_view module() const noexcept { return module_of(code_); }

 private:
  ErrorCode code_;
  std::string operation_;
  std::string cause_;
};

}  // namespace rtergm
