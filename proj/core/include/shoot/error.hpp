#pragma once

#include <stdexcept>
#include <string>

namespace shoot {

enum class Errc {
  SingularMatrix,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidArgument,
  StepSizeUnderflow,
  MaxStepsExceeded,
  NonFiniteState,
  TimeOutOfRange,
  NotConverged,
  NoReference,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

  /// True for the failures an IVP integration can raise.
  bool is_integration_failure() const noexcept;

 private:
  Errc code_;
};

}  // namespace shoot
