#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levyreflect {

enum class ErrorKind {
  InvalidArgument,
  InfiniteMoment,
  DomainError,
  NoRoot,
  UnsupportedModel,
  NotDifferentiable,
  OutOfRange,
  MeshMismatch,
  ExcessCensoring,
  CensoredInput,
  WrongRegime,
  TooFewSamples,
  DegenerateOvershoot,
  BelowCutoff,
  QuadratureFailure,
  Overflow,
  NonpositiveGap,
  PreconditionViolated,
  NonpositiveProbability,
  WrongBarrier,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can report it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace levyreflect
