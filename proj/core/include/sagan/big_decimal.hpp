#pragma once

#include <cstdint>
#include <string>

namespace sagan {

// m x 10^e with 1 <= |m| < 10 (or m == 0). Exponents beyond what a double
// can hold are the point of this type.
struct BigDecimal {
  double mantissa = 0.0;
  std::int64_t exponent = 0;

  static BigDecimal from_double(double value);
  // Normalizes an arbitrary mantissa/exponent pair.
  static BigDecimal make(double mantissa, std::int64_t exponent);
  // Parses "5.919e2132", "3.2E16", "1000".
  static BigDecimal parse(const std::string& text);

  BigDecimal operator*(const BigDecimal& rhs) const;
  BigDecimal operator/(const BigDecimal& rhs) const;

  // log10 of the value (loses precision for huge exponents).
  double log10() const;

  // "5.919e2132" with `significant` digits.
  std::string str(int significant = 4) const;
};

}  // namespace sagan
