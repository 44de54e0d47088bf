#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selchab {

enum class ErrorCode {
  DivisionByIndistinguishableZero,
  NotASquare,
  PrecisionExhausted,
  InsufficientPrecision,
  NotFullRank,
  NotSquarefreeMod2,
  NotAUnit,
  InternalInconsistency,
  DegreeTooLarge,
  EvenH0,
  IndistinguishableFromZero,
  ScanBudgetExceeded,
  RankDrop,
  NotInLocalImage,
  IndexOutOfRange,
  ResultantNotUnit,
  OddDegree,
  NotMonic,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI and the verifier can map it onto exit codes and report reasons.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace selchab
