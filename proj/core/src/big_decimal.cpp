#include "sagan/big_decimal.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sagan/error.hpp"

namespace sagan {

BigDecimal BigDecimal::make(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) return {mantissa, 0};
  int shift = static_cast<int>(std::floor(std::log10(std::fabs(mantissa))));
  mantissa /= std::pow(10.0, shift);
  exponent += shift;
  // Guard against log10 rounding at the boundaries.
  if (std::fabs(mantissa) >= 10.0) {
    mantissa /= 10.0;
    ++exponent;
  } else if (std::fabs(mantissa) < 1.0) {
    mantissa *= 10.0;
    --exponent;
  }
  return {mantissa, exponent};
}

BigDecimal BigDecimal::from_double(double value) { return make(value, 0); }

BigDecimal BigDecimal::parse(const std::string& text) {
  auto e = text.find_first_of("eE");
  char* end = nullptr;
  std::string head = text.substr(0, e);
  double m = std::strtod(head.c_str(), &end);
  if (head.empty() || end != head.c_str() + head.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad decimal '" + text + "'");
  }
  std::int64_t exp = 0;
  if (e != std::string::npos) {
    std::string tail = text.substr(e + 1);
    exp = std::strtoll(tail.c_str(), &end, 10);
    if (tail.empty() || end != tail.c_str() + tail.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad exponent in '" + text + "'");
    }
  }
  return make(m, exp);
}

BigDecimal BigDecimal::operator*(const BigDecimal& rhs) const {
  return make(mantissa * rhs.mantissa, exponent + rhs.exponent);
}

BigDecimal BigDecimal::operator/(const BigDecimal& rhs) const {
  if (rhs.mantissa == 0.0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  return make(mantissa / rhs.mantissa, exponent - rhs.exponent);
}

double BigDecimal::log10() const { return std::log10(mantissa) + static_cast<double>(exponent); }

std::string BigDecimal::str(int significant) const {
  if (significant < 1) significant = 1;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", significant - 1, mantissa);
  std::int64_t exp = exponent;
  // Rounding may carry the mantissa up to 10.
  if (std::fabs(std::strtod(buf, nullptr)) >= 10.0) {
    std::snprintf(buf, sizeof buf, "%.*f", significant - 1, mantissa / 10.0);
    ++exp;
  }
  return std::string(buf) + "e" + std::to_string(exp);
}

}  // namespace sagan
