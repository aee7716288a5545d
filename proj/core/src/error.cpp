#include "shoot/error.hpp"

namespace shoot {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::StepSizeUnderflow: return "StepSizeUnderflow";
    case Errc::MaxStepsExceeded: return "MaxStepsExceeded";
    case Errc::NonFiniteState: return "NonFiniteState";
    case Errc::TimeOutOfRange: return "TimeOutOfRange";
    case Errc::NotConverged: return "NotConverged";
    case Errc::NoReference: return "NoReference";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::is_integration_failure() const noexcept {
  return code_ == Errc::StepSizeUnderflow || code_ == Errc::MaxStepsExceeded ||
         code_ == Errc::NonFiniteState;
}

}  // namespace shoot
