#pragma once

#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sagan/digit_block.hpp"

namespace sagan::detail {

mpz_class pow_ui(unsigned base, std::size_t exponent);

// `value` as exactly `width` base-`base` digits, most significant first.
std::vector<Digit> to_digits(const mpz_class& value, unsigned base, std::size_t width);

// Big-endian digit string to integer.
mpz_class from_digits(std::span<const Digit> digits, unsigned base);

// The true value lies in the closed interval [lo / scale, hi / scale].
struct Enclosure {
  mpz_class lo;
  mpz_class hi;
  mpz_class scale;
};

// Fractional digits shared by both ends of the enclosure, or nullopt when
// the interval straddles a digit boundary.
std::optional<std::vector<Digit>> digits_from_enclosure(const Enclosure& enclosure, unsigned base,
                                                        std::size_t count);

}  // namespace sagan::detail
