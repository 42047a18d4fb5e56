#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sagan {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedConstant,
  PrecisionExhausted,
  InsufficientInputDigits,
  InvalidDigit,
  NonPositiveCoefficient,
  EllipseOutOfRaster,
  EvenOrTooSmallN,
  AsymmetricPattern,
  WrongOctantLength,
  BaseTooSmall,
  BaseMismatch,
  LimitTooSmall,
  DigitOutOfRange,
  CarryAmbiguity,
  KTooLarge,
  BlockTooShort,
  TooFewSamples,
  MismatchedTotals,
  CacheCorrupt,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sagan
