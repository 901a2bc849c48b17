#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckn {

enum class ErrorCode {
  InvalidDimension,
  InadmissibleB,
  OutOfDomain,
  DegenerateParams,
  InvalidProfile,
  NonpositiveScale,
  OutOfGrid,
  BlowUp,
  InvalidStep,
  NoConvergence,
  TooShort,
  WrongRegime,
  UnverifiedProfile,
  NotConverged,
  NoSignChange,
  TailNotDecayed,
  WindowOutOfGrid,
  NonpositiveValues,
  CriticalA,
  ResolutionTooLarge,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type. `context` is a
// JSON object literal (possibly "{}") with the numbers that explain the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = "{}")
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace ckn
