#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sagan/constant.hpp"
#include "sagan/digit_block.hpp"

namespace sagan::digits {

// Extra source digits consumed by a base conversion beyond the
// information-theoretic minimum.
inline constexpr unsigned kDefaultGuard = 12;

// First `count` fractional decimal digits (truncated, never rounded).
DigitBlock decimal_digits(const ConstantSpec& constant, std::size_t count);

// First `count` fractional digits in `base`. Rationals and concatenation
// constants in their own base are produced natively; everything else goes
// through a decimal (or native-base) expansion converted with `guard` and
// re-checked with 2 * guard.
DigitBlock digits_in_base(const ConstantSpec& constant, unsigned base, std::size_t count,
                          unsigned guard = kDefaultGuard);

struct Conversion {
  DigitBlock block;
  // True when both ends of the truncation interval of the input produce the
  // same output digits, i.e. the output cannot change with more input.
  bool stable = false;
};

// Converts the value 0.d1 d2 d3... (base 10, starting at position 1) to
// `target_base`. Requires at least ceil(out_count * log10(target_base)) +
// guard input digits.
Conversion base_convert(const DigitBlock& decimal_fraction, unsigned target_base,
                        std::size_t out_count, unsigned guard = kDefaultGuard);

// Same as base_convert for an input block in any base.
Conversion convert_fraction(const DigitBlock& fraction, unsigned target_base,
                            std::size_t out_count, unsigned guard = kDefaultGuard);

// Minimum input length base_convert accepts.
std::size_t required_input_digits(unsigned source_base, unsigned target_base,
                                  std::size_t out_count, unsigned guard);

// Exact long division digits of the fractional part of p/q.
DigitBlock rational_digits(std::int64_t p, std::int64_t q, unsigned base, std::size_t count,
                           std::uint64_t start_position = 1);

// Digits of a concatenation constant in its own base (Champernowne(b) in b,
// Copeland-Erdos and Fibonacci concatenation in base 10).
DigitBlock concat_constant_digits(const ConstantSpec& constant, std::size_t count);

// Coefficient a_i of a continued fraction [a0; a1, a2, ...]; nullopt ends a
// finite expansion.
using CoefficientSource = std::function<std::optional<mpz_class>(std::size_t index)>;

CoefficientSource fibonacci_coefficients();
CoefficientSource finite_coefficients(std::vector<mpz_class> coefficients);

struct CfracEvaluation {
  DigitBlock block;
  std::size_t depth = 0;  // convergents consumed
  mpq_class width;        // width of the enclosing interval (0 when exact)
};

inline constexpr std::size_t kDefaultCfracMaxDepth = 1u << 20;

// Fractional digits of the continued fraction value. `min_depth` forces at
// least that many coefficients to be consumed.
CfracEvaluation cfrac_evaluate(const CoefficientSource& coefficients, unsigned base,
                               std::size_t count, std::size_t min_depth = 0,
                               std::size_t max_depth = kDefaultCfracMaxDepth);

DigitBlock cfrac_digits(const CoefficientSource& coefficients, unsigned base, std::size_t count);

// Pull-based producer of successive contiguous digit blocks. Single consumer.
class DigitStream {
 public:
  DigitStream(ConstantSpec source, unsigned base, std::size_t block_size);

  DigitBlock pull() { return pull(block_size_); }
  DigitBlock pull(std::size_t count);

  // Next pull starts at `position` (>= 1).
  void seek(std::uint64_t position);

  std::uint64_t cursor() const { return cursor_; }
  unsigned base() const { return base_; }
  std::size_t block_size() const { return block_size_; }
  const ConstantSpec& source() const { return source_; }

 private:
  void ensure(std::uint64_t last_position);

  ConstantSpec source_;
  unsigned base_;
  std::size_t block_size_;
  std::uint64_t cursor_ = 1;
  std::uint64_t computed_ = 0;
  std::uint64_t buffer_start_ = 1;
  std::vector<Digit> buffer_;
};

DigitStream open_stream(const ConstantSpec& constant, unsigned base, std::size_t block_size);

// Unbounded incremental prime generator (segmented sieve).
class PrimeSieve {
 public:
  PrimeSieve();
  std::uint64_t next();

 private:
  void sieve_next_segment();

  std::vector<std::uint64_t> base_primes_;
  std::vector<std::uint64_t> pending_;
  std::size_t pending_index_ = 0;
  std::uint64_t segment_low_ = 2;
};

// Writes `value` in `base` as exactly `width` digits (most significant
// first, zero padded). `value` must be < base^width.
std::vector<Digit> to_base_digits(const mpz_class& value, unsigned base, std::size_t width);

}  // namespace sagan::digits
