#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plap {

enum class ErrorKind {
  InvalidArgument,
  InvalidExponent,
  OutOfRange,
  NonConvergent,
  NonIntegrable,
  InvalidBracket,
  StepUnderflow,
  NonPeriodic,
  InsufficientBranch,
  BranchRangeExceeded,
  ZeroFunction,
  NonPositive,
  DomainError,
  PositivityLost,
  ConservationDrift,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` lets callers branch on the failure class
/// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plap
