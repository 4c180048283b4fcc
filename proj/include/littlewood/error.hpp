#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace littlewood {

enum class ErrorKind {
  InvalidArgument,
  PerfectSquare,
  ZeroDenominator,
  StreamExhausted,
  HorizonTooSmall,
  NotEnoughReturns,
  DegenerateQ,
  VerificationFailed,
  PAdicDenominator,
  PreconditionViolated,
  SequenceExhausted,
  DigitCapExceeded,
  Overflow,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the named kinds above;
/// the CLI prints `error_name(kind())` verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace littlewood
