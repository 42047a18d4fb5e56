#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagan/digit_block.hpp"

namespace sagan::bbp {

struct LinearTerm {
  std::int64_t coefficient = 0;
  std::uint32_t offset = 1;  // in [1, modulus]
};

// alpha = sum_{k>=0} base^-k * sum_j c_j / (modulus * k + offset_j)
struct BBPFormula {
  unsigned base = 16;
  std::uint32_t modulus = 8;
  std::vector<LinearTerm> terms;
  std::string description;

  // Throws InvalidArgument on duplicate or out-of-range offsets.
  void validate() const;
};

// alpha = sum_{k>=0} base^-k * p(k) / q(k); coefficients lowest degree first.
// q must not vanish at any k >= 0.
struct PolynomialFormula {
  unsigned base = 2;
  std::vector<std::int64_t> numerator;
  std::vector<std::int64_t> denominator;
};

BBPFormula pi_formula();
// log 2 = sum_{k>=0} 2^-k / (2k + 2).
BBPFormula log2_formula();

PolynomialFormula to_polynomial(const BBPFormula& formula);

inline constexpr unsigned kMaxExtractCount = 8;
inline constexpr unsigned kGuardLevels[] = {64, 128, 256};

struct Extraction {
  DigitBlock block;
  unsigned guard_bits = 0;  // guard level that settled the digits
};

// Digits alpha_position .. alpha_{position+count-1} without computing the
// preceding ones. Throws CarryAmbiguity if the error interval still
// straddles a digit boundary at the highest guard level.
Extraction digit_extract(const BBPFormula& formula, std::uint64_t position, unsigned count);

// Leading fractional digits by direct summation with a rigorous tail bound.
DigitBlock evaluate(const BBPFormula& formula, std::size_t digit_count);
DigitBlock evaluate(const PolynomialFormula& formula, std::size_t digit_count);

}  // namespace sagan::bbp
