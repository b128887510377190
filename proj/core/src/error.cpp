#include "dcalb/error.hpp"

namespace dcalb {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySchedule: return "EmptySchedule";
    case Errc::FirstTimeNotZero: return "FirstTimeNotZero";
    case Errc::NonMonotoneTimes: return "NonMonotoneTimes";
    case Errc::NonPositiveAmount: return "NonPositiveAmount";
    case Errc::NonPositiveInterval: return "NonPositiveInterval";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::OverflowDetected: return "OverflowDetected";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonPositiveFactor: return "NonPositiveFactor";
    case Errc::ScheduleTooShort: return "ScheduleTooShort";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::ZeroDrift: return "ZeroDrift";
    case Errc::NonPositiveDrift: return "NonPositiveDrift";
    case Errc::InvalidProbability: return "InvalidProbability";
    case Errc::DegenerateLaw: return "DegenerateLaw";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::NoFeasibleGridPoint: return "NoFeasibleGridPoint";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::NonContiguousYears: return "NonContiguousYears";
    case Errc::NonPositiveValue: return "NonPositiveValue";
    case Errc::TooFewRecords: return "TooFewRecords";
    case Errc::LagTooLarge: return "LagTooLarge";
  }
  return "Unknown";
}

}  // namespace dcalb
