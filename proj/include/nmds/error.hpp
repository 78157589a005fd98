#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nmds {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  InvalidModulus,
  FieldTooLarge,
  FieldTooSmall,
  DivisionByZero,
  NotSuzukiField,
  WrongCharacteristic,
  IncompatibleFields,
  NoSuchRoot,
  TooLarge,
  DegenerateSpan,
  AmbientMismatch,
  ProjectingNucleus,
  NotFound,
  SingularParameters,
  ConditionUnsatisfied,
  SideConditionViolated,
  WrongCongruenceClass,
  CurveContainsLine,
  PropertyViolatedByInput,
  DoesNotSpan,
  MultipleWitnesses,
  NoWitness,
  Timeout,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nmds
