#include "plap/error.hpp"

namespace plap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::InvalidBracket: return "InvalidBracket";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NonPeriodic: return "NonPeriodic";
    case ErrorKind::InsufficientBranch: return "InsufficientBranch";
    case ErrorKind::BranchRangeExceeded: return "BranchRangeExceeded";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PositivityLost: return "PositivityLost";
    case ErrorKind::ConservationDrift: return "ConservationDrift";
  }
  return "Unknown";
}

}  // namespace plap
