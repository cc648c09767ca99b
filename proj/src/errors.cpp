#include "sealoss/errors.hpp"

namespace sealoss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSpecularPoint: return "NoSpecularPoint";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::AntennaTooHigh: return "AntennaTooHigh";
    case ErrorCode::FrequencyOutOfRange: return "FrequencyOutOfRange";
    case ErrorCode::NotImplemented: return "NotImplemented";
    case ErrorCode::MissingParameters: return "MissingParameters";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::MissingCalibration: return "MissingCalibration";
    case ErrorCode::AlreadyCalibrated: return "AlreadyCalibrated";
    case ErrorCode::NoValidSamples: return "NoValidSamples";
    case ErrorCode::NoCoverage: return "NoCoverage";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace detail {
void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }
}  // namespace detail

}  // namespace sealoss
