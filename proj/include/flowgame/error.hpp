#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flowgame {

enum class ErrorCode {
  // input
  ParseError,
  MissingNode,
  NegativeCapacity,
  NegativeCost,
  SelfLoop,
  SourceEqualsSink,
  NoPathSourceToSink,
  InvalidPath,
  InvalidEdge,
  AmbiguousEdge,
  InvalidStrategy,
  InfeasibleFlow,
  MultipleTerminals,
  // resource caps
  TooManyNodes,
  TooManyPaths,
  TooManyEdges,
  // game-theoretic preconditions
  WrongRegion,
  BoundaryParameters,
  AssumptionViolated,
  InvalidPartition,
  BudgetOutOfRange,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::NegativeCapacity: return "NegativeCapacity";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::SourceEqualsSink: return "SourceEqualsSink";
    case ErrorCode::NoPathSourceToSink: return "NoPathSourceToSink";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::AmbiguousEdge: return "AmbiguousEdge";
    case ErrorCode::InvalidStrategy: return "InvalidStrategy";
    case ErrorCode::InfeasibleFlow: return "InfeasibleFlow";
    case ErrorCode::MultipleTerminals: return "MultipleTerminals";
    case ErrorCode::TooManyNodes: return "TooManyNodes";
    case ErrorCode::TooManyPaths: return "TooManyPaths";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::WrongRegion: return "WrongRegion";
    case ErrorCode::BoundaryParameters: return "BoundaryParameters";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::BudgetOutOfRange: return "BudgetOutOfRange";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flowgame
