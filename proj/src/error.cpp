#include "rtergm/error.hpp"

namespace rtergm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::SelfDyad: return "SelfDyad";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::NegativeDecay: return "NegativeDecay";
    case ErrorCode::BaseLevelDisallowed: return "BaseLevelDisallowed";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::ModelSpecParse: return "ModelSpecParse";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Separation: return "Separation";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::UnknownTimestampFormat: return "UnknownTimestampFormat";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view module_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop:
    case ErrorCode::NodeOutOfRange:
    case ErrorCode::SelfDyad:
    case ErrorCode::TooFewNodes:
      return "graph_core";
    case ErrorCode::NegativeDecay:
    case ErrorCode::BaseLevelDisallowed:
    case ErrorCode::InvalidModel:
    case ErrorCode::ModelSpecParse:
      return "model_terms";
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidConfig:
      return "sampler";
    case ErrorCode::Separation:
    case ErrorCode::Singular:
    case ErrorCode::DegenerateModel:
    case ErrorCode::NonConvergence:
      return "estimator";
    case ErrorCode::NotConverged:
      return "gof";
    case ErrorCode::UnknownTimestampFormat:
    case ErrorCode::InsufficientData:
      return "ingest";
    case ErrorCode::Parse:
    case ErrorCode::Io:
      return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string operation, const std::string& cause)
    : std::runtime_error(std::string(to_string(code)) + " in " + operation + ": " + cause),
      code_(code),
      operation_(std::move(operation)),
      cause_(cause) {}

}  // namespace rtergm
