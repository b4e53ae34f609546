#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghost {

enum class Errc {
  InvalidArgument,
  UnknownFamily,
  DomainError,
  NoTransit,
  ToleranceNotMet,
  StepLimitExceeded,
  NonpositiveParameter,
  DivergentLimit,
  InsufficientData,
  DegenerateData,
  SingularPoint,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for errors caused by bad input rather than by the computation.
  bool is_usage_error() const noexcept {
    return code_ == Errc::InvalidArgument || code_ == Errc::UnknownFamily ||
           code_ == Errc::DomainError;
  }

 private:
  Errc code_;
};

}  // namespace ghost
