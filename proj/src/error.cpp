#include "littlewood/error.hpp"

namespace littlewood {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PerfectSquare: return "PerfectSquare";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::StreamExhausted: return "StreamExhausted";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorKind::NotEnoughReturns: return "NotEnoughReturns";
    case ErrorKind::DegenerateQ: return "DegenerateQ";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::PAdicDenominator: return "PAdicDenominator";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SequenceExhausted: return "SequenceExhausted";
    case ErrorKind::DigitCapExceeded: return "DigitCapExceeded";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace littlewood
