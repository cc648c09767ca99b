#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sealoss {

enum class ErrorCode {
  InvalidArgument,
  NoSpecularPoint,
  NumericalFailure,
  AntennaTooHigh,
  FrequencyOutOfRange,
  NotImplemented,
  MissingParameters,
  DegenerateFit,
  LengthMismatch,
  EmptyLog,
  HeaderMismatch,
  MissingCalibration,
  AlreadyCalibrated,
  NoValidSamples,
  NoCoverage,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
[[noreturn]] void fail(ErrorCode code, const std::string& what);
}  // namespace detail

}  // namespace sealoss
