#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sagan/big_decimal.hpp"
#include "sagan/constant.hpp"
#include "sagan/digit_block.hpp"
#include "sagan/digits.hpp"
#include "sagan/raster.hpp"

namespace sagan::search {

using DigitSet = std::bitset<256>;

// Per-position admissible digit sets for a flattened n^2 window.
class CompiledMatcher {
 public:
  CompiledMatcher(unsigned base, std::vector<DigitSet> sets);

  unsigned base() const { return base_; }
  std::size_t length() const { return sets_.size(); }
  const DigitSet& admissible(std::size_t index) const { return sets_[index]; }
  bool admits(std::size_t index, Digit d) const { return sets_[index].test(d); }
  // Whether the window fits the single-word shift-and scanner.
  bool bit_parallel() const { return sets_.size() <= 64; }
  // Bit i set iff digit d is admissible at window index i.
  std::uint64_t shift_mask(Digit d) const { return masks_[d]; }

  bool matches(std::span<const Digit> window) const;

 private:
  unsigned base_;
  std::vector<DigitSet> sets_;
  std::vector<std::uint64_t> masks_;
};

// Plain pattern: 1-cells admit {1}, 0-cells admit {0}. Throws BaseTooSmall
// for base < 2.
CompiledMatcher compile(const raster::RasterPattern& pattern, unsigned base);
// Circle cells admit P, background cells admit Q. Requires base > max(P u Q).
CompiledMatcher compile(const raster::GeneralizedPattern& pattern, unsigned base);
// Literal digit string.
CompiledMatcher compile_literal(std::span<const Digit> digits, unsigned base);

// Incremental first-match scanner over a digit stream fed in pieces.
class Scanner {
 public:
  explicit Scanner(const CompiledMatcher& matcher);

  // Index into `digits` of the digit completing the first match, if any.
  std::optional<std::size_t> feed(std::span<const Digit> digits);
  void reset();

 private:
  const CompiledMatcher* matcher_;
  std::uint64_t state_ = 0;
  std::vector<Digit> ring_;
  std::size_t head_ = 0;
  std::uint64_t seen_ = 0;
};

struct SearchResult {
  bool found = false;
  std::uint64_t position = 0;  // 1-indexed anchor of the first window digit
  DigitBlock window;
  DigitBlock context_before;
  DigitBlock context_after;
  std::uint64_t digits_examined = 0;
  std::uint64_t limit = 0;
};

inline constexpr std::size_t kDefaultContext = 12;

// First anchor p with p + length - 1 <= limit whose window matches. Reads
// the stream from its current cursor, which must be at position 1.
SearchResult find_first(digits::DigitStream& stream, const CompiledMatcher& matcher, std::uint64_t limit,
                        std::size_t context_width = kDefaultContext);

SearchResult find_digit(digits::DigitStream& stream, unsigned digit, std::uint64_t limit,
                        std::size_t context_width = kDefaultContext);

// First anchor inside an in-memory block (window entirely inside the block).
std::optional<std::uint64_t> scan_block(const DigitBlock& block, const CompiledMatcher& matcher);

// Same answer as scan_block, computed over `chunks` ranges overlapping by
// length - 1 digits, scanned concurrently.
std::optional<std::uint64_t> scan_block_chunked(const DigitBlock& block, const CompiledMatcher& matcher,
                                                std::size_t chunks);

// Stream-based chunked search: each range gets its own stream.
SearchResult find_first_chunked(const ConstantSpec& constant, const CompiledMatcher& matcher, std::uint64_t limit,
                                std::size_t chunks, std::size_t context_width = kDefaultContext);

// base^window_length, mantissa accurate to well beyond 6 significant digits.
BigDecimal expected_position(unsigned base, std::uint64_t window_length);

// Number of distinct windows the matcher accepts: prod |admissible set|.
BigDecimal class_frequency_gain(const CompiledMatcher& matcher);
mpz_class class_frequency_gain_exact(const CompiledMatcher& matcher);

inline constexpr double kNanosecondsPerYear = 3.2e16;
inline constexpr double kUniverseAgeYears = 1.35e10;

struct CostEstimate {
  BigDecimal expected_digits;
  BigDecimal cpu_seconds;
  BigDecimal cpu_years;
  BigDecimal universe_age_multiples;
};

CostEstimate cost_estimate(const BigDecimal& expected_digits, double ns_per_digit = 1.0);

// Product of the first `count` primes and the integers bracketing its
// square root.
struct PrimeProductRoot {
  mpz_class product;
  mpz_class floor_root;
  mpz_class ceil_root;
};
PrimeProductRoot prime_product_root(unsigned count);

}  // namespace sagan::search
