#include "selchab/error.hpp"

namespace selchab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NotFullRank: return "NotFullRank";
    case ErrorCode::NotSquarefreeMod2: return "NotSquarefreeMod2";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::EvenH0: return "EvenH0";
    case ErrorCode::IndistinguishableFromZero: return "IndistinguishableFromZero";
    case ErrorCode::ScanBudgetExceeded: return "ScanBudgetExceeded";
    case ErrorCode::RankDrop: return "RankDrop";
    case ErrorCode::NotInLocalImage: return "NotInLocalImage";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ResultantNotUnit: return "ResultantNotUnit";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace selchab
