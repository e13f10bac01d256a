#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace faultrank {

enum class ErrorCode {
  DuplicateId,
  DanglingComponentRef,
  EmptyCatalog,
  InvalidProbability,
  UnknownFault,
  UnknownComponent,
  MissingProbability,
  DanglingEdge,
  SelfLoop,
  InvalidSignal,
  UnknownTrigger,
  UnknownNode,
  EmptyGraph,
  SingularSystem,
  InvalidConfig,
  GenerationFailed,
  ParseError,
  IoError,
};

/// Stable string name of an error code, used in JSON error output.
std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace faultrank
