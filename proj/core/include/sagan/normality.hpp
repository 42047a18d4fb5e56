#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sagan/constant.hpp"
#include "sagan/digit_block.hpp"

namespace sagan::normality {

// Largest counting table accepted: base^k <= 2^24.
inline constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;

struct KGramCounts {
  unsigned base = 10;
  unsigned k = 1;
  std::uint64_t length = 0;  // digits scanned
  // counts[v] is the number of windows whose digits read v in base `base`,
  // most significant digit first.
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t count(std::span<const Digit> gram) const;
  // Digits of table index `index` as a k-gram.
  std::vector<Digit> gram(std::size_t index) const;
};

// Overlapping windows. Throws KTooLarge, BlockTooShort.
KGramCounts kgram_counts(const DigitBlock& digits, unsigned k);

inline constexpr double kDefaultMinExpected = 5.0;

struct ChiSquare {
  double statistic = 0.0;
  std::uint64_t degrees_of_freedom = 0;
  double p_value = 1.0;
  bool underflow = false;  // true p-value below the smallest normal double
};

// Pearson statistic against the uniform distribution over all base^k
// strings. Throws TooFewSamples when the expected count per cell is below
// `min_expected`.
ChiSquare chi_square_uniform(const KGramCounts& counts, double min_expected = kDefaultMinExpected);

// Upper tail Q(dof/2, statistic/2) of the chi-square distribution.
double chi_square_upper_tail(double statistic, double degrees_of_freedom);

struct KReport {
  unsigned k = 1;
  std::uint64_t cells = 0;   // base^k
  std::uint64_t windows = 0; // length - k + 1
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  ChiSquare chi;
};

struct NormalityReport {
  std::string constant;
  unsigned base = 10;
  std::uint64_t length = 0;
  std::vector<KReport> rows;
  std::string verdict;
};

// Counts and chi-square for k = 1..k_max over the first `length` digits.
NormalityReport normality_scan(const ConstantSpec& constant, unsigned base, std::uint64_t length, unsigned k_max,
                               double min_expected = kDefaultMinExpected);
// Same over a block already in memory.
NormalityReport normality_scan(const DigitBlock& digits, const std::string& label, unsigned k_max,
                               double min_expected = kDefaultMinExpected);

struct EquidistributionProbability {
  std::string exact;          // 6 significant digits, e.g. "1.23456e-25"
  double exact_log10 = 0.0;
  std::string stirling;       // same rendering of the Stirling estimate
  double stirling_log10 = 0.0;
  double stirling_ratio = 0.0;  // stirling / exact
};

// Probability that `trials` uniform draws over `categories` values land
// exactly `per_category` times in each:
// trials! / ((per_category!)^categories * categories^trials).
// Throws MismatchedTotals unless trials == categories * per_category.
EquidistributionProbability exact_equidistribution_probability(std::uint64_t trials, std::uint64_t categories,
                                                               std::uint64_t per_category);

}  // namespace sagan::normality
