#include "levyreflect/error.hpp"

namespace levyreflect {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InfiniteMoment: return "InfiniteMoment";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::MeshMismatch: return "MeshMismatch";
    case ErrorKind::ExcessCensoring: return "ExcessCensoring";
    case ErrorKind::CensoredInput: return "CensoredInput";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::DegenerateOvershoot: return "DegenerateOvershoot";
    case ErrorKind::BelowCutoff: return "BelowCutoff";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonpositiveGap: return "NonpositiveGap";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonpositiveProbability: return "NonpositiveProbability";
    case ErrorKind::WrongBarrier: return "WrongBarrier";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace levyreflect
