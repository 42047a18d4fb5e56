#include "sagan/error.hpp"

namespace sagan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedConstant: return "UnsupportedConstant";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InsufficientInputDigits: return "InsufficientInputDigits";
    case ErrorCode::InvalidDigit: return "InvalidDigit";
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::EllipseOutOfRaster: return "EllipseOutOfRaster";
    case ErrorCode::EvenOrTooSmallN: return "EvenOrTooSmallN";
    case ErrorCode::AsymmetricPattern: return "AsymmetricPattern";
    case ErrorCode::WrongOctantLength: return "WrongOctantLength";
    case ErrorCode::BaseTooSmall: return "BaseTooSmall";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::LimitTooSmall: return "LimitTooSmall";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::CarryAmbiguity: return "CarryAmbiguity";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::BlockTooShort: return "BlockTooShort";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MismatchedTotals: return "MismatchedTotals";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
  }
  return "Unknown";
}

}  // namespace sagan
