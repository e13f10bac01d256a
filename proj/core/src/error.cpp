#include "faultrank/error.hpp"

namespace faultrank {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingComponentRef: return "DanglingComponentRef";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::UnknownFault: return "UnknownFault";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::MissingProbability: return "MissingProbability";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidSignal: return "InvalidSignal";
    case ErrorCode::UnknownTrigger: return "UnknownTrigger";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace faultrank
