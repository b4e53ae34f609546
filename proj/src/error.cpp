#include "ghost/error.hpp"

namespace ghost {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::DomainError: return "DomainError";
    case Errc::NoTransit: return "NoTransit";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::StepLimitExceeded: return "StepLimitExceeded";
    case Errc::NonpositiveParameter: return "NonpositiveParameter";
    case Errc::DivergentLimit: return "DivergentLimit";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::SingularPoint: return "SingularPoint";
  }
  return "Unknown";
}

}  // namespace ghost
